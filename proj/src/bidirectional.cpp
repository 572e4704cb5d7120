#include "wqed/bidirectional.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

#include "wqed/errors.hpp"
#include "wqed/rng.hpp"

namespace wqed::bidir {

namespace {

using C = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
constexpr C kI{0.0, 1.0};

std::vector<double> cumulative_phases(const EmitterChain& chain) {
  std::vector<double> cum(chain.n, 0.0);
  for (int j = 1; j < chain.n; ++j) cum[j] = cum[j - 1] + chain.phases[j - 1];
  return cum;
}

Mat build_coupling(const EmitterChain& chain, const SystemParams& p,
                   double detuning) {
  const int n = chain.n;
  const std::vector<double> cum = cumulative_phases(chain);
  Mat m = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    m(j, j) = C(-0.5, detuning);
    for (int l = 0; l < n; ++l) {
      if (l == j) continue;
      const double rate = (j > l) ? p.beta : p.beta_l;
      if (rate == 0.0) continue;
      const double phi = std::abs(cum[j] - cum[l]);
      m(j, l) = -rate * std::exp(kI * phi);
    }
  }
  return m;
}

int pair_index(int j, int l, int n) {
  // j < l; row-major over the strictly upper triangle
  return j * n - j * (j + 1) / 2 + (l - j - 1);
}

/// Solves A^H P + P A = -Q for stable A (all Re lambda < 0) by the
/// Bartels-Stewart algorithm on the complex Schur form. P is then
/// Integral_0^inf e^{A^H t} Q e^{A t} dt.
Mat lyapunov(const Mat& a, const Mat& q) {
  const int n = static_cast<int>(a.rows());
  Eigen::ComplexSchur<Mat> schur(a);
  if (schur.info() != Eigen::Success)
    throw SingularSystemError("lyapunov: Schur decomposition failed", 0.0);
  const Mat& t = schur.matrixT();
  const Mat& u = schur.matrixU();
  for (int i = 0; i < n; ++i)
    if (t(i, i).real() >= -1e-13)
      throw SingularSystemError("lyapunov: coupling matrix not strictly stable",
                                std::abs(t(i, i).real()));
  Mat qt = u.adjoint() * q * u;
  Mat pt = Mat::Zero(n, n);
  // Column sweep: (T^H + T(k,k) I) p_k = -q_k - sum_{i<k} T(i,k) p_i,
  // a lower-triangular solve since T^H is lower triangular.
  for (int k = 0; k < n; ++k) {
    Vec rhs = -qt.col(k);
    for (int i = 0; i < k; ++i) rhs -= t(i, k) * pt.col(i);
    Vec pk(n);
    for (int r = 0; r < n; ++r) {
      C acc = rhs(r);
      for (int c = 0; c < r; ++c) acc -= std::conj(t(c, r)) * pk(c);
      pk(r) = acc / (std::conj(t(r, r)) + t(k, k));
    }
    pt.col(k) = pk;
  }
  return u * pt * u.adjoint();
}

struct Conditional {
  C vac;      // vacuum amplitude (constant in tau)
  Vec start;  // single-excitation amplitudes right after the detection
};

struct Workspace {
  int n = 0;
  SystemParams p;
  std::vector<double> cum;
  Mat m1;
  Eigen::PartialPivLU<Mat> lu;   // of m1
  Vec e;                          // steady single-excitation amplitudes
  C t_tot, r_tot;
  Eigen::RowVectorXcd u_fwd;      // forward output projection
  Eigen::RowVectorXcd u_bwd;      // backward output projection
  Vec e2;                         // pair amplitudes (upper triangle)
  double gamma_loss = 0.0;

  C pair_amp(int j, int l) const {
    if (j == l) return 0.0;
    const int a = std::min(j, l), b = std::max(j, l);
    return e2(pair_index(a, b, n));
  }

  Conditional after_forward() const {
    Conditional c;
    c.vac = t_tot;
    c.start = Vec(n);
    for (int m = 0; m < n; ++m) {
      C acc = e(m);
      for (int j = 0; j < n; ++j) {
        if (j == m) continue;
        acc += kI * std::sqrt(p.beta) * std::exp(-kI * cum[j]) * pair_amp(j, m);
      }
      c.start(m) = acc;
    }
    return c;
  }

  Conditional after_loss(int j) const {
    Conditional c;
    const double g = std::sqrt(gamma_loss);
    c.vac = g * e(j);
    c.start = Vec::Zero(n);
    for (int m = 0; m < n; ++m)
      if (m != j) c.start(m) = g * pair_amp(j, m);
    return c;
  }

  Conditional after_backward() const {
    Conditional c;
    c.vac = r_tot;
    c.start = Vec(n);
    for (int m = 0; m < n; ++m) {
      C acc = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == m) continue;
        acc += kI * std::sqrt(p.beta_l) * std::exp(kI * cum[j]) * pair_amp(j, m);
      }
      c.start(m) = acc;
    }
    return c;
  }
};

Workspace make_workspace(const EmitterChain& chain, const SystemParams& p,
                         double detuning) {
  Workspace w;
  w.n = chain.n;
  w.p = p;
  w.cum = cumulative_phases(chain);
  w.m1 = build_coupling(chain, p, detuning);
  w.lu = Eigen::PartialPivLU<Mat>(w.m1);

  Vec src(w.n);
  for (int j = 0; j < w.n; ++j)
    src(j) = kI * std::sqrt(p.beta) * std::exp(kI * w.cum[j]);
  w.e = w.lu.solve(-src);
  const double resid = (w.m1 * w.e + src).norm() / std::max(1e-300, src.norm());
  if (!(resid < 1e-8))
    throw SingularSystemError("single_excitation_solve: large residual", resid);

  w.u_fwd = Eigen::RowVectorXcd(w.n);
  w.u_bwd = Eigen::RowVectorXcd(w.n);
  for (int j = 0; j < w.n; ++j) {
    w.u_fwd(j) = kI * std::sqrt(p.beta) * std::exp(-kI * w.cum[j]);
    w.u_bwd(j) = kI * std::sqrt(p.beta_l) * std::exp(kI * w.cum[j]);
  }
  w.t_tot = 1.0 + (w.u_fwd * w.e)(0, 0);
  w.r_tot = (w.u_bwd * w.e)(0, 0);
  w.gamma_loss = 1.0 - p.beta - p.beta_l;
  return w;
}

void solve_pairs(Workspace& w, double detuning) {
  const int n = w.n;
  const int np = n * (n - 1) / 2;
  w.e2 = Vec::Zero(np);
  if (np == 0) return;
  Mat m2 = Mat::Zero(np, np);
  Vec s2 = Vec::Zero(np);
  for (int j = 0; j < n; ++j) {
    for (int l = j + 1; l < n; ++l) {
      const int row = pair_index(j, l, n);
      m2(row, row) = C(-1.0, 2.0 * detuning);
      for (int q = 0; q < n; ++q) {
        if (q == j || q == l) continue;
        // slot j -> q keeps l; slot l -> q keeps j
        m2(row, pair_index(std::min(q, l), std::max(q, l), n)) += w.m1(j, q);
        m2(row, pair_index(std::min(q, j), std::max(q, j), n)) += w.m1(l, q);
      }
      s2(row) = kI * std::sqrt(w.p.beta) *
                (std::exp(kI * w.cum[j]) * w.e(l) + std::exp(kI * w.cum[l]) * w.e(j));
    }
  }
  Eigen::PartialPivLU<Mat> lu2(m2);
  w.e2 = lu2.solve(-s2);
  const double resid = (m2 * w.e2 + s2).norm() / std::max(1e-300, s2.norm());
  if (!(resid < 1e-8))
    throw SingularSystemError("two_excitation_solve: large residual", resid);
}

/// Integral_0^inf (|F_inf + u e^{M tau} d|^2 - |F_inf|^2) dtau via the
/// Lyapunov quadratic plus the resolvent cross term.
double connected_integral(const Workspace& w, const Mat& p_fwd, C f_inf,
                          const Vec& dc) {
  const Vec z = w.lu.solve(dc);  // M^{-1} dc; Int e^{M tau} dc dtau = -z
  const C lin = (w.u_fwd * z)(0, 0);
  const double cross = 2.0 * (std::conj(f_inf) * (-lin)).real();
  const double quadratic = (dc.adjoint() * p_fwd * dc)(0, 0).real();
  return cross + quadratic;
}

}  // namespace

EmitterChain sample_chain(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_chain: n >= 1 required");
  EmitterChain c;
  c.n = n;
  c.seed = seed;
  c.phases.resize(n - 1);
  for (int j = 0; j + 1 < n; ++j)
    c.phases[j] = 2.0 * M_PI * rng::uniform01(seed, static_cast<std::uint64_t>(j));
  return c;
}

SingleExcSolution single_excitation_solve(const EmitterChain& chain,
                                          const SystemParams& p,
                                          double detuning) {
  p.validate();
  Workspace w = make_workspace(chain, p, detuning);
  SingleExcSolution s;
  s.amplitudes = w.e;
  s.t_total = w.t_tot;
  s.r_total = w.r_tot;
  return s;
}

Eigen::VectorXcd two_excitation_solve(const EmitterChain& chain,
                                      const SystemParams& p,
                                      const SingleExcSolution& single,
                                      double detuning) {
  p.validate();
  Workspace w = make_workspace(chain, p, detuning);
  w.e = single.amplitudes;
  solve_pairs(w, detuning);
  return w.e2;
}

BidirObservables output_observables(const EmitterChain& chain,
                                    const SystemParams& p,
                                    std::span<const double> x_grid) {
  p.validate();
  Workspace w = make_workspace(chain, p, p.k0);
  solve_pairs(w, p.k0);
  const int n = w.n;

  BidirObservables out;
  out.power.linear = std::norm(w.t_tot);

  const Conditional ca = w.after_forward();
  const Vec dca = ca.start - ca.vac * w.e;
  const C a_inf = w.t_tot * ca.vac;  // t^2

  // Two-photon amplitude on the grid: A(tau) = t c0 + u_fwd e^{M tau} dc.
  std::vector<double> taus(x_grid.size());
  for (std::size_t i = 0; i < x_grid.size(); ++i) taus[i] = std::abs(x_grid[i]);
  std::vector<std::size_t> order(taus.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return taus[a] < taus[b]; });
  out.psi.resize(x_grid.size());
  out.g2.resize(x_grid.size());
  Vec state = dca;
  double tau_now = 0.0;
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const std::size_t i = order[oi];
    const double gap = taus[i] - tau_now;
    if (gap > 0.0) {
      const Mat prop = (w.m1 * gap).exp();
      state = prop * state;
      tau_now = taus[i];
    }
    out.psi[i] = a_inf + (w.u_fwd * state)(0, 0);
  }
  const double t4 = std::norm(a_inf);
  out.g2_unnormalized = !(t4 > 1e-200);
  for (std::size_t i = 0; i < x_grid.size(); ++i)
    out.g2[i] = out.g2_unnormalized ? std::norm(out.psi[i])
                                    : std::norm(out.psi[i]) / t4;

  // Power to order drive^2: connected pair and mixed-channel integrals.
  const Mat q_fwd = w.u_fwd.adjoint() * w.u_fwd;
  const Mat p_fwd = lyapunov(w.m1, q_fwd);
  const double pair_conn = 2.0 * connected_integral(w, p_fwd, a_inf, dca);

  double mixed_conn = 0.0;
  // Loss-first histories, one independent reservoir per emitter.
  if (w.gamma_loss > 0.0) {
    for (int j = 0; j < n; ++j) {
      const Conditional cj = w.after_loss(j);
      const Vec dcj = cj.start - cj.vac * w.e;
      mixed_conn += connected_integral(w, p_fwd, w.t_tot * cj.vac, dcj);
    }
    // Transmitted-first histories: loss amplitude summed over reservoirs is
    // gamma_loss ||dc_a(tau)||^2, a single Lyapunov with Q = gamma_loss I.
    const Mat p_loss =
        lyapunov(w.m1, Mat::Identity(n, n) * w.gamma_loss);
    const double quad_v = (dca.adjoint() * p_loss * dca)(0, 0).real();
    const Vec z = w.lu.solve(dca);
    const C cross_sum = (w.e.adjoint() * z)(0, 0);  // sum_j conj(e_j) z_j
    const double cross_v =
        2.0 * w.gamma_loss * (std::conj(w.t_tot) * (-cross_sum)).real();
    mixed_conn += quad_v + cross_v;
  }
  if (p.beta_l > 0.0) {
    const Conditional cb = w.after_backward();
    const Vec dcb = cb.start - cb.vac * w.e;
    mixed_conn += connected_integral(w, p_fwd, w.t_tot * cb.vac, dcb);
    // transmitted first, backward photon second
    const Mat q_bwd = w.u_bwd.adjoint() * w.u_bwd;
    const Mat p_bwd = lyapunov(w.m1, q_bwd);
    const double quad_b = (dca.adjoint() * p_bwd * dca)(0, 0).real();
    const Vec z = w.lu.solve(dca);
    const C lin_b = (w.u_bwd * z)(0, 0);
    const C v_inf = w.t_tot * w.r_tot;
    const double cross_b = 2.0 * (std::conj(v_inf) * (-lin_b)).real();
    mixed_conn += quad_b + cross_b;
  }

  const double pin_units = (p.beta > 0.0) ? p.drive / p.beta : 0.0;
  out.power.pair = pin_units * pair_conn;
  out.power.mixed = pin_units * mixed_conn;
  if (p.has_units()) out.power.physical_rate_hz = out.power.total() * p.p_in_hz();
  return out;
}

EnsembleResult ensemble_run(const SystemParams& p, int n_realizations,
                            std::uint64_t master_seed,
                            std::span<const double> x_grid, par::Exec mode) {
  p.validate();
  if (n_realizations < 1)
    throw std::invalid_argument("ensemble_run: n_realizations >= 1");

  EnsembleResult res;
  res.master_seed = master_seed;
  res.params = p;

  std::vector<BidirObservables> runs(n_realizations);
  std::vector<std::string> errs(n_realizations);
  par::for_each_index(static_cast<std::size_t>(n_realizations), mode,
                      [&](std::size_t i) {
                        try {
                          const EmitterChain chain = sample_chain(
                              p.n_emitters, rng::derive_seed(master_seed, i));
                          runs[i] = output_observables(chain, p, x_grid);
                        } catch (const std::exception& ex) {
                          errs[i] = ex.what();
                        }
                      });

  const std::size_t ng = x_grid.size();
  res.g2_mean.assign(ng, 0.0);
  res.g2_std.assign(ng, 0.0);
  res.psi_abs_mean.assign(ng, 0.0);
  double pw_lin = 0.0, pw_pair = 0.0, pw_mixed = 0.0;
  double pw_tot_sq = 0.0;
  for (int i = 0; i < n_realizations; ++i) {
    if (!errs[i].empty()) {
      res.failures.emplace_back(i, errs[i]);
      continue;
    }
    res.per_realization.push_back(runs[i]);
    const BidirObservables& r = runs[i];
    for (std::size_t g = 0; g < ng; ++g) {
      res.g2_mean[g] += r.g2[g];
      res.g2_std[g] += r.g2[g] * r.g2[g];
      res.psi_abs_mean[g] += std::abs(r.psi[g]);
    }
    pw_lin += r.power.linear;
    pw_pair += r.power.pair;
    pw_mixed += r.power.mixed;
    pw_tot_sq += r.power.total() * r.power.total();
  }
  const int ns = static_cast<int>(res.per_realization.size());
  res.n_realizations = ns;
  if (ns > 0) {
    for (std::size_t g = 0; g < ng; ++g) {
      res.g2_mean[g] /= ns;
      res.psi_abs_mean[g] /= ns;
      const double var =
          std::max(0.0, res.g2_std[g] / ns - res.g2_mean[g] * res.g2_mean[g]);
      res.g2_std[g] = std::sqrt(var);
    }
    res.power_mean.linear = pw_lin / ns;
    res.power_mean.pair = pw_pair / ns;
    res.power_mean.mixed = pw_mixed / ns;
    const double mean_tot = res.power_mean.total();
    res.power_total_std =
        std::sqrt(std::max(0.0, pw_tot_sq / ns - mean_tot * mean_tot));
    if (p.has_units())
      res.power_mean.physical_rate_hz = mean_tot * p.p_in_hz();
  }
  return res;
}

}  // namespace wqed::bidir
