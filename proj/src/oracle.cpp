#include "wqed/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "wqed/chiral_exact.hpp"
#include "wqed/errors.hpp"

namespace wqed::oracle {

namespace {

using C = std::complex<double>;
constexpr C kI{0.0, 1.0};

double sq(double v) { return v * v; }

// t_{k0+D}^N t_{k0-D}^N - 1, stable at large D where the product -> 1.
struct RMinusOne {
  int n;
  C a2, g2;       // a^2, gamma^2
  bool resonant;  // k0 == 0: the log is real
  double qr;      // Re q at resonance

  C operator()(double d) const {
    const double d2 = d * d;
    if (resonant) {
      return std::expm1(n * std::log1p(qr / (d2 + 0.25)));
    }
    const C ratio = (C(d2, 0.0) - a2) / (C(d2, 0.0) - g2);
    const C w = static_cast<double>(n) * std::log(ratio);
    if (std::abs(w) < 1e-4) return w * (1.0 + w * (0.5 + w / 6.0));
    return std::exp(w) - 1.0;
  }
};

RMinusOne make_rm1(const SystemParams& p, const DerivedConstants& dc) {
  RMinusOne r;
  r.n = p.n_emitters;
  r.a2 = dc.a_pole * dc.a_pole;
  r.g2 = dc.gamma_pole * dc.gamma_pole;
  r.resonant = (p.k0 == 0.0);
  r.qr = dc.q.real();
  return r;
}

// Extended-state weight [2 cos(D x) - (G/D) sin(D x)] / (G^2 + 4 D^2).
double h_weight(double d, double ax, double gw) {
  const double den = gw * gw + 4.0 * d * d;
  double s;
  if (std::abs(d) < 1e-8) {
    const double u = d * ax;
    s = ax * (1.0 - u * u / 6.0);
  } else {
    s = std::sin(d * ax) / d;
  }
  return (2.0 * std::cos(d * ax) - gw * s) / den;
}

double psi_scale_estimate(const SystemParams& p, const DerivedConstants& dc) {
  const double lin = std::exp(2.0 * p.n_emitters * std::log(std::abs(dc.t0) + 1e-300));
  const double lobe = dc.gamma_wg / (2.0 * std::sqrt(M_PI) * std::max(dc.xi, 0.3));
  return std::max({lin, lobe, 1e-6});
}

struct PanelSum {
  quad::Result total;
  void add(const quad::Result& r) {
    total.value += r.value;
    total.error += r.error;
    total.evals += r.evals;
    total.converged = total.converged && r.converged;
  }
};

}  // namespace

ValueWithError psi_quadrature(const SystemParams& p, double x,
                              const QuadratureSpec& spec) {
  p.validate();
  if (p.beta_l != 0.0)
    throw std::invalid_argument("psi_quadrature: chiral path requires beta_l = 0");
  if (p.beta == 0.0) return {C(1.0, 0.0), 0.0, true};

  const double ax = std::abs(x);
  const DerivedConstants dc = DerivedConstants::from(p);
  const double gw = dc.gamma_wg;
  const int N = p.n_emitters;

  const C ttn =
      ScaledComplex::pow_int(chiral::bound_transmission(2.0 * p.k0, p.beta), N)
          .to_complex();
  const double edecay = std::exp(-0.5 * gw * ax);
  // psi = 2 ttilde^N e^{-G|x|/2} - 2 e^{-G|x|/2} + 1 - (G/pi) Int (R-1) h
  const C base = 2.0 * (ttn - 1.0) * edecay + 1.0;

  const RMinusOne rm1 = make_rm1(p, dc);
  auto f = [&](double d) -> C { return rm1(d) * h_weight(d, ax, gw); };

  const double scale = psi_scale_estimate(p, dc);
  const double tol_abs =
      std::max(spec.abs_tol, spec.rel_tol * scale) * M_PI / gw / 4.0;

  // Cutoff from the 1/Delta^2 envelope of (R-1) against the algebraic or
  // oscillatory tail bound, whichever allows the smaller range.
  const double nq = N * std::abs(dc.q);
  double dmax = spec.tail_cutoff_delta;
  double tail_bound = 0.0;
  if (dmax <= 0.0) {
    dmax = std::max({8.0, 2.0 * dc.xi + 6.0, std::sqrt(2.0 * nq)});
    auto bound_at = [&](double dm) {
      const double direct = 0.65 * nq / (dm * dm * dm);
      if (ax < 0.5) return direct;
      const double osc = 3.0 * nq / (sq(sq(dm)) * ax);
      return std::min(direct, osc);
    };
    while (bound_at(dmax) > tol_abs && dmax < 2e5) dmax *= 1.35;
    tail_bound = bound_at(dmax);
  } else {
    tail_bound = 0.65 * nq / (dmax * dmax * dmax);
  }

  PanelSum sum;
  const double core = std::min(dmax, std::max(6.0, 1.5 * dc.xi + 4.0));
  sum.add(quad::integrate_oscillatory(f, 0.0, core, ax, tol_abs / 2.0,
                                      spec.rel_tol, spec.max_subdivisions));
  double lo = core;
  while (lo < dmax) {
    const double hi = std::min(dmax, lo * 2.0);
    sum.add(quad::integrate_oscillatory(f, lo, hi, ax, tol_abs / 6.0,
                                        spec.rel_tol, spec.max_subdivisions));
    lo = hi;
  }

  ValueWithError out;
  out.value = base - (gw / M_PI) * (2.0 * sum.total.value);
  out.error = (gw / M_PI) * (2.0 * sum.total.error + tail_bound);
  out.converged = out.error <= std::max(spec.abs_tol, spec.rel_tol * scale) * 8.0;
  return out;
}

ValueWithError phi_capital(int M, const SystemParams& p,
                           const QuadratureSpec& spec) {
  if (M < 0) throw std::invalid_argument("phi_capital: M >= 0");
  if (p.k0 != 0.0)
    throw std::invalid_argument("phi_capital: resonant drive only");
  if (M == 0 || p.beta == 0.0) return {C(0.0, 0.0), 0.0, true};

  SystemParams pm = p;
  pm.n_emitters = M;
  const double xim = std::sqrt(M * p.beta * (1.0 - p.beta));
  // Phi_M = Int (s_k + s_{-k}) phi_M(k) dk = -2i Int_0^inf phi_M(k)/(k^2+1/4) dk
  auto f = [&](double k) -> C {
    return chiral::phi_k_exact(pm, k) / (k * k + 0.25);
  };
  const double dmax = std::max(14.0, 4.0 * xim + 10.0);
  quad::Result r = quad::integrate_gk(f, 0.0, dmax, spec.abs_tol / 2.0,
                                      spec.rel_tol, spec.max_subdivisions);
  // |phi| <= c/k^2 beyond the lobes; estimate the tail from the edge value.
  const double edge = std::abs(f(dmax));
  const double tail = edge * dmax / 3.0;
  ValueWithError out;
  out.value = -2.0 * kI * r.value;
  out.error = 2.0 * (r.error + tail);
  out.converged = r.converged;
  return out;
}

namespace {

struct MixedKernel {
  // Everything needed to evaluate c_M(k) for one M.
  int npow;         // N - M - 1
  double sqs;       // sqrt(beta (1-beta-beta_l)) -- chiral: beta_l = 0
  double gw;        // beta
  C bsrc;           // 4 pi s0 t0^{2M} - Phi_M
  C coef_b;         // i G sqrt(S) / pi

  C t(double k) const { return 1.0 - 2.0 * gw / (1.0 - 2.0 * kI * k); }
  C s(double k) const { return 1.0 / C(k, 0.5); }

  C c_of_k(double k) const {
    const C tk = t(k);
    C tpw;
    const double at = std::abs(tk);
    if (at == 0.0) {
      tpw = (npow == 0) ? C(1.0, 0.0) : C(0.0, 0.0);
    } else {
      tpw = std::exp(static_cast<double>(npow) * std::log(tk));
    }
    const C rkm = -kI * sqs * s(-k);                 // r_{-k}
    const double ssprod = -1.0 / (k * k + 0.25);     // s_k s_{-k}, real
    return tpw * (-2.0 * tk * rkm * phi(k) + coef_b * ssprod * bsrc);
  }

  std::function<C(double)> phi;
};

}  // namespace

PowerBreakdown power_integrals_adaptive(const SystemParams& p,
                                        const QuadratureSpec& spec,
                                        par::Exec mode) {
  p.validate();
  if (p.k0 != 0.0)
    throw std::invalid_argument("power_integrals: resonant drive only");
  if (p.beta_l != 0.0)
    throw std::invalid_argument("power_integrals: chiral path requires beta_l = 0");
  const int N = p.n_emitters;
  const DerivedConstants dc = DerivedConstants::from(p);
  PowerBreakdown pb;
  pb.linear = std::pow(dc.t0 * dc.t0, N);
  if (p.beta == 0.0 || p.drive == 0.0) return pb;

  const double gw = p.beta;
  const double sqs = std::sqrt(p.beta * (1.0 - p.beta));
  const double pin_units = p.drive / p.beta;  // P_in with gamma_tot = 1

  // Pair channel via Parseval: (1/2pi) Int |phi_N|^2 dD - 2 t0^{2N} Re phi_N(0).
  const double xin = dc.xi;
  auto phi_n = [&](double k) { return chiral::phi_k_exact(p, k); };
  const double dmax_pair = std::max(14.0, 4.0 * xin + 10.0);
  quad::Result rp = quad::integrate_gk(
      [&](double k) -> C { return C(std::norm(phi_n(k)), 0.0); }, 0.0,
      dmax_pair, spec.abs_tol, spec.rel_tol, spec.max_subdivisions);
  if (!rp.converged)
    throw ToleranceError("power_integrals: pair integral tolerance not met",
                         rp.error);
  const C phi0 = phi_n(0.0);
  const double ipair =
      (1.0 / M_PI) * rp.value.real() - 2.0 * pb.linear * phi0.real();
  pb.pair = pin_units * ipair;

  // Mixed channel: one integral per loss position M.
  std::vector<double> mixed_m(N, 0.0);
  std::vector<std::string> errors(N);
  const C s0{0.0, -2.0};
  const double r0 = -2.0 * sqs;

  par::for_each_index(static_cast<std::size_t>(N), mode, [&](std::size_t mi) {
    const int M = static_cast<int>(mi);
    try {
      SystemParams pm = p;
      pm.n_emitters = std::max(1, M);
      MixedKernel ker;
      ker.npow = N - M - 1;
      ker.sqs = sqs;
      ker.gw = gw;
      ker.coef_b = kI * gw * sqs / M_PI;
      const C phim_cap =
          (M == 0) ? C(0.0, 0.0) : phi_capital(M, p, spec).value;
      const double t0_2m = std::pow(dc.t0 * dc.t0, M);
      ker.bsrc = 4.0 * M_PI * s0 * t0_2m - phim_cap;
      if (M == 0) {
        ker.phi = [](double) { return C(0.0, 0.0); };
      } else {
        ker.phi = [pm](double k) { return chiral::phi_k_exact(pm, k); };
      }
      const double xim = std::sqrt(std::max(1, M) * p.beta * (1.0 - p.beta));
      const double dmax =
          std::max(12.0, 3.0 * std::sqrt((xin * xin + xim * xim)) + 8.0);
      quad::Result rm = quad::integrate_gk(
          [&](double k) -> C {
            return C(std::norm(ker.c_of_k(k)) + std::norm(ker.c_of_k(-k)), 0.0);
          },
          0.0, dmax, spec.abs_tol, spec.rel_tol, spec.max_subdivisions);
      if (!rm.converged) {
        std::ostringstream os;
        os << "mixed integral for M=" << M << " achieved " << rm.error;
        errors[M] = os.str();
        return;
      }
      const double quadratic = rm.value.real() / (8.0 * M_PI);
      const double tpow_n_m = std::pow(dc.t0, N + M);
      const double cross = (r0 * tpow_n_m * ker.c_of_k(0.0)).real();
      mixed_m[M] = quadratic + cross;
    } catch (const std::exception& e) {
      errors[M] = e.what();
    }
  });

  for (int M = 0; M < N; ++M)
    if (!errors[M].empty())
      throw ToleranceError("power_integrals: " + errors[M], 0.0);
  // Fixed-order reduction keeps the result independent of the thread count.
  double mixed = 0.0;
  for (int M = 0; M < N; ++M) mixed += mixed_m[M];
  pb.mixed = pin_units * mixed;
  return pb;
}

namespace {

struct SpectralGrid {
  std::vector<double> k, w;  // composite-Simpson abscissae and weights
};

SpectralGrid build_grid(const SystemParams& p, double refine) {
  const double xin =
      std::sqrt(p.n_emitters * p.beta * (1.0 - p.beta));
  const double h1 = std::min(0.01, (1.0 - p.beta) / 20.0 + 1e-4) / refine;
  const double b1 = 6.0;
  const double h2 = std::max(h1, 0.04 / refine);
  const double b2 = std::max(12.0, 4.0 * xin);
  const double h3 = std::max(h2, std::min(0.15, xin / 40.0 + 0.02) / refine);
  const double b3 = std::max(40.0, 8.0 * xin);

  SpectralGrid g;
  auto add_block = [&g](double a, double b, double h) {
    int n = static_cast<int>(std::ceil((b - a) / h));
    n += n % 2;  // Simpson needs an even interval count
    n = std::max(n, 2);
    const double hh = (b - a) / n;
    for (int i = 0; i <= n; ++i) {
      const double x = a + hh * i;
      double w = hh / 3.0;
      if (i == 0 || i == n)
        w *= 1.0;
      else if (i % 2 == 1)
        w *= 4.0;
      else
        w *= 2.0;
      if (i == 0 && !g.k.empty()) {
        g.w.back() += w;  // fuse block boundaries
      } else {
        g.k.push_back(x);
        g.w.push_back(w);
      }
    }
  };
  add_block(0.0, b1, h1);
  add_block(b1, b2, h2);
  add_block(b2, b3, h3);
  return g;
}

struct GridEngineResult {
  PowerBreakdown pb;
  std::vector<double> k;
  std::vector<C> phi;
};

// Per-emitter update of the correlated pair amplitude on the energy shell:
//   phi_{M+1}(k) = t_k t_{-k} phi_M(k)
//                  - (i G^2/2pi) s_k s_{-k} [4 pi s0 t0^{2M} - Phi_M],
// the rank-one form of the two-photon scattering kernel. The mixed-channel
// sum accumulates while the recurrence runs.
GridEngineResult run_grid_engine(const SystemParams& p, double refine,
                                 bool want_power, par::Exec mode) {
  const int N = p.n_emitters;
  const DerivedConstants dc = DerivedConstants::from(p);
  const double gw = p.beta;
  const double sqs = std::sqrt(p.beta * (1.0 - p.beta));
  const C s0{0.0, -2.0};
  const double r0 = -2.0 * sqs;
  const C coef_r = kI * gw * gw / (2.0 * M_PI);
  const C coef_b = kI * gw * sqs / M_PI;

  SpectralGrid g = build_grid(p, refine);
  const std::size_t G = g.k.size();

  std::vector<C> tk(G), logt(G), ssum(G);
  std::vector<double> ssprod(G);
  std::vector<char> tzero(G, 0);
  for (std::size_t i = 0; i < G; ++i) {
    const double k = g.k[i];
    tk[i] = 1.0 - 2.0 * gw / (1.0 - 2.0 * kI * k);
    if (std::abs(tk[i]) == 0.0) {
      tzero[i] = 1;
      logt[i] = 0.0;
    } else {
      logt[i] = std::log(tk[i]);
    }
    ssprod[i] = -1.0 / (k * k + 0.25);
    ssum[i] = -kI / (k * k + 0.25);  // s_k + s_{-k}
  }

  std::vector<C> phi(G, C(0.0, 0.0));
  double mixed = 0.0;
  const std::size_t kChunk = 512;

  // Fixed-order chunked reductions keep sums independent of thread count.
  auto reduce_c = [&](auto&& f) -> C {
    const std::size_t nchunk = (G + kChunk - 1) / kChunk;
    std::vector<C> partial(nchunk, C(0.0, 0.0));
    par::for_each_index(nchunk, mode, [&](std::size_t c) {
      C acc{0.0, 0.0};
      const std::size_t e = std::min(G, (c + 1) * kChunk);
      for (std::size_t i = c * kChunk; i < e; ++i) acc += f(i);
      partial[c] = acc;
    });
    C total{0.0, 0.0};
    for (const C& v : partial) total += v;
    return total;
  };

  for (int M = 0; M < N; ++M) {
    const C phim_cap =
        2.0 * reduce_c([&](std::size_t i) { return g.w[i] * ssum[i] * phi[i]; });
    const double t0_2m = std::pow(dc.t0 * dc.t0, M);
    const C bsrc = 4.0 * M_PI * s0 * t0_2m - phim_cap;

    if (want_power) {
      const int npow = N - M - 1;
      const C quad_sum = reduce_c([&](std::size_t i) {
        const C tkk = tk[i];
        C tpw;
        if (tzero[i]) {
          tpw = (npow == 0) ? C(1.0, 0.0) : C(0.0, 0.0);
        } else {
          tpw = std::exp(static_cast<double>(npow) * logt[i]);
        }
        const double k = g.k[i];
        const C rkm = -kI * sqs / C(-k, 0.5);  // r_{-k}
        const C rkp = -kI * sqs / C(k, 0.5);   // r_{+k}
        const C cplus = tpw * (-2.0 * tkk * rkm * phi[i] + coef_b * ssprod[i] * bsrc);
        const C tkm = std::conj(tkk);
        const C tpwm = std::conj(tpw);
        const C cminus =
            tpwm * (-2.0 * tkm * rkp * phi[i] + coef_b * ssprod[i] * bsrc);
        return g.w[i] * C(std::norm(cplus) + std::norm(cminus), 0.0);
      });
      // c_M(0) from the k = 0 grid point.
      C tpw0;
      if (tzero[0]) {
        tpw0 = (npow == 0) ? C(1.0, 0.0) : C(0.0, 0.0);
      } else {
        tpw0 = std::exp(static_cast<double>(npow) * logt[0]);
      }
      const C rk0 = -kI * sqs / C(0.0, 0.5);
      const C c0 = tpw0 * (-2.0 * tk[0] * rk0 * phi[0] + coef_b * ssprod[0] * bsrc);
      const double cross = (r0 * std::pow(dc.t0, N + M) * c0).real();
      mixed += quad_sum.real() / (8.0 * M_PI) + cross;
    }

    par::for_each_index(G, mode, [&](std::size_t i) {
      phi[i] = tk[i] * std::conj(tk[i]) * phi[i] - coef_r * ssprod[i] * bsrc;
    });
  }

  GridEngineResult out;
  out.k = g.k;
  out.phi = phi;
  out.pb.linear = std::pow(dc.t0 * dc.t0, N);
  if (want_power) {
    const double pin_units = p.drive / p.beta;
    const C pairq =
        reduce_c([&](std::size_t i) { return g.w[i] * C(std::norm(phi[i]), 0.0); });
    const double ipair =
        pairq.real() / M_PI - 2.0 * out.pb.linear * phi[0].real();
    out.pb.pair = pin_units * ipair;
    out.pb.mixed = pin_units * mixed;
  }
  return out;
}

}  // namespace

PowerBreakdown power_integrals_grid(const SystemParams& p,
                                    const QuadratureSpec& spec,
                                    par::Exec mode) {
  p.validate();
  if (p.k0 != 0.0)
    throw std::invalid_argument("power_integrals: resonant drive only");
  if (p.beta_l != 0.0)
    throw std::invalid_argument("power_integrals: chiral path requires beta_l = 0");
  PowerBreakdown fine = run_grid_engine(p, 2.0, true, mode).pb;
  if (p.drive > 0.0 && p.beta > 0.0 && p.beta < 1.0) {
    PowerBreakdown coarse = run_grid_engine(p, 1.0, true, mode).pb;
    const double nl = std::abs(fine.nonlinear());
    const double err = std::abs(fine.nonlinear() - coarse.nonlinear());
    const double tol =
        std::max(spec.abs_tol, std::max(spec.rel_tol, 1e-5) * nl);
    if (nl > 0.0 && err > tol * 50.0)
      throw ToleranceError("power_integrals_grid: refinement drift " +
                               std::to_string(err),
                           err);
  }
  return fine;
}

PowerBreakdown power_integrals(const SystemParams& p, const QuadratureSpec& spec,
                               par::Exec mode) {
  if (p.n_emitters <= 64 && p.beta <= 0.8 && p.beta > 0.0) {
    try {
      return power_integrals_adaptive(p, spec, mode);
    } catch (const PrecisionLossError&) {
      // closed form exhausted; the spectral recurrence takes over
    }
  }
  return power_integrals_grid(p, spec, mode);
}

SpectrumSamples phi_k_recurrence(const SystemParams& p,
                                 const QuadratureSpec& /*spec*/,
                                 par::Exec mode) {
  p.validate();
  GridEngineResult r = run_grid_engine(p, 2.0, false, mode);
  SpectrumSamples s;
  s.k_grid = std::move(r.k);
  s.values = std::move(r.phi);
  s.method = WfMethod::Quadrature;
  s.params = p;
  return s;
}

namespace {

void fft_radix2(std::vector<C>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = 2.0 * M_PI / static_cast<double>(len) * (inverse ? 1 : -1);
    const C wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      C w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const C u = a[i + j];
        const C v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

}  // namespace

FourierCheckReport fourier_crosscheck(const SystemParams& p, std::size_t n_fft,
                                      double x_span, par::Exec mode) {
  p.validate();
  const DerivedConstants dc = DerivedConstants::from(p);
  if (x_span <= 0.0)
    x_span = std::max(80.0, 30.0 / std::max(1e-2, 1.0 - p.beta));
  // power of two
  std::size_t n = 1;
  while (n < n_fft) n <<= 1;
  const double dx = 2.0 * x_span / static_cast<double>(n);

  FourierCheckReport rep;
  rep.n_samples = n;
  rep.grid_resolved = dx < 0.1 / std::max(dc.xi, 1e-3);

  const C t2n = chiral::uncorrelated_amplitude(p);
  std::vector<C> samples(n);
  par::for_each_index(n, mode, [&](std::size_t m) {
    const double x = -x_span + dx * static_cast<double>(m);
    samples[m] = t2n - chiral::psi_exact(p, x);  // phi_N(x)
  });
  fft_radix2(samples, false);

  // phi_hat(D_j) = dx e^{+i D_j x_span} FFT_j, D_j = 2 pi j/(n dx).
  const double dk = 2.0 * M_PI / (static_cast<double>(n) * dx);
  const double dcmp = std::min(6.0 * dc.xi + 8.0, 0.4 * M_PI / dx);
  double max_abs = 1e-300;
  std::vector<std::pair<double, C>> ft;
  for (std::size_t j = 0; j < n; ++j) {
    const double kj =
        (j <= n / 2) ? dk * static_cast<double>(j)
                     : dk * (static_cast<double>(j) - static_cast<double>(n));
    if (std::abs(kj) > dcmp) continue;
    const C phase(std::cos(kj * x_span), std::sin(kj * x_span));
    ft.emplace_back(kj, dx * phase * samples[j]);
  }
  std::vector<double> devs(ft.size(), 0.0);
  std::vector<double> mags(ft.size(), 0.0);
  par::for_each_index(ft.size(), mode, [&](std::size_t i) {
    const C exact = chiral::phi_k_exact(p, ft[i].first);
    devs[i] = std::abs(ft[i].second - exact);
    mags[i] = std::abs(exact);
  });
  for (std::size_t i = 0; i < ft.size(); ++i) max_abs = std::max(max_abs, mags[i]);
  double max_dev = 0.0;
  for (double d : devs) max_dev = std::max(max_dev, d);
  rep.max_rel_dev = max_dev / max_abs;

  // A delta spike at D = 0 would dwarf the neighbours; the removable limit
  // must instead interpolate smoothly.
  double near = 0.0, at0 = 0.0;
  for (const auto& [kj, v] : ft) {
    if (kj == 0.0) at0 = std::abs(v);
    if (std::abs(std::abs(kj) - dk) < 0.5 * dk) near = std::max(near, std::abs(v));
  }
  rep.spike_ratio = (near > 0.0) ? at0 / near : 0.0;
  return rep;
}

}  // namespace wqed::oracle
