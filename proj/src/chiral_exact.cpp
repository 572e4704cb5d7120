#include "wqed/chiral_exact.hpp"

#include <cmath>
#include <stdexcept>

#include "wqed/errors.hpp"
#include "wqed/specfun.hpp"

namespace wqed::chiral {

namespace {

using C = std::complex<double>;
using CL = std::complex<long double>;
using SCL = ScaledComplexL;

constexpr C kI{0.0, 1.0};

void check_nm(int n_emitters, int m) {
  if (n_emitters < 1) throw std::invalid_argument("f_coefficient: N >= 1 required");
  if (m < 0 || m >= n_emitters)
    throw std::invalid_argument("f_coefficient: requires 0 <= m <= N-1");
}

SCL f_coefficient_scaled(int N, int m, const DerivedConstants& dc) {
  // F(N,m) = m! sum_{k=0}^{m} (-1)^{m-k} C(N,k) (N+m-2k-1)!/[(N-k-1)!(m-k)!]
  //          q^{N-k} (2 gamma)^{-(N+m-2k)}
  // built from the k = 0 term by exact small-integer ratios.
  const CL q(dc.q.real(), dc.q.imag());
  if (q == CL{}) return {};  // beta = 0 or the beta = 1 resonant degeneracy
  const CL w2g = CL(2) * CL(dc.gamma_pole.real(), dc.gamma_pole.imag());

  // term_0 = (-1)^m [ (N+m-1)!/(N-1)! ] q^N (2g)^{-(N+m)}
  SCL term(static_cast<long double>((m % 2 == 0) ? 1.0 : -1.0));
  for (int j = N; j <= N + m - 1; ++j) term *= SCL(static_cast<long double>(j));
  term *= SCL::pow_int(q, N);
  term *= SCL::pow_int(w2g, -(N + m));

  SCL sum = term;
  const SCL ratio_poles = SCL(w2g * w2g) * SCL(q).reciprocal();
  for (int k = 0; k + 1 <= m; ++k) {
    const long double num = -static_cast<long double>(N - k) *
                            static_cast<long double>(N - k - 1) *
                            static_cast<long double>(m - k);
    const long double den = static_cast<long double>(k + 1) *
                            static_cast<long double>(N + m - 2 * k - 1) *
                            static_cast<long double>(N + m - 2 * k - 2);
    term *= SCL(num / den);
    term *= ratio_poles;
    sum += term;
  }
  return sum;
}

// chi_{k0,n}(x) = 2(-g)^{-n-1} G_{n+1}(-i g x) - 2 e^{-G x/2}(-a0)^{-n-1} G_{n+1}(-i a0 x)
SCL chi_x_impl(int n, double ax, const DerivedConstants& dc) {
  const C g = dc.gamma_pole;
  const C a0 = dc.a0_pole;
  SCL t1 = SCL::pow_int(CL(-g.real(), -g.imag()), -(n + 1)) *
           specfun::incomplete_gamma_upper_int_scaledl(n, -kI * g * ax);
  SCL t2 = SCL::exp(C(-0.5 * dc.gamma_wg * ax, 0.0)) *
           SCL::pow_int(CL(-a0.real(), -a0.imag()), -(n + 1)) *
           specfun::incomplete_gamma_upper_int_scaledl(n, -kI * a0 * ax);
  return SCL(2.0L) * (t1 - t2);
}

// u(D) = (-D-g)^{-n-1}/(D + iG/2); chi_k needs (u(D) - u(-D))/D.
SCL chi_k_odd_part(int n, double dk, const DerivedConstants& dc) {
  const CL g(dc.gamma_pole.real(), dc.gamma_pole.imag());
  const CL ig2(0.0L, 0.5L * static_cast<long double>(dc.gamma_wg));
  const long double d = dk;
  const long double sw = 0.01L / (n + 1);
  if (std::abs(dk) > static_cast<double>(sw)) {
    const SCL up = SCL::pow_int(CL(-d) - g, -(n + 1)) * SCL(CL(d) + ig2).reciprocal();
    const SCL um = SCL::pow_int(CL(d) - g, -(n + 1)) * SCL(CL(-d) + ig2).reciprocal();
    return (up - um) * SCL(CL(1.0L / d));
  }
  // Removable limit: odd Taylor series (u(D)-u(-D))/D = 2 sum_{j odd} u^(j)(0) D^{j-1}/j!
  // with u^(j)(0) = sum_i C(j,i) (n+1)_i (-g)^{-n-1-i} (-1)^{j-i}(j-i)! (iG/2)^{-(j-i)-1}.
  SCL out;
  long double dpow = 1.0L;  // D^{j-1}
  for (int j = 1; j <= 7; j += 2) {
    SCL uj;
    long double cji = 1.0L;      // C(j,i)
    long double poch = 1.0L;     // (n+1)_i
    for (int i = 0; i <= j; ++i) {
      SCL piece = SCL(cji * poch);
      piece *= SCL::pow_int(-g, -(n + 1 + i));
      long double fact = 1.0L;
      for (int t = 2; t <= j - i; ++t) fact *= t;
      piece *= SCL(((j - i) % 2 == 0) ? fact : -fact);
      piece *= SCL::pow_int(ig2, -(j - i) - 1);
      uj += piece;
      cji = cji * (j - i) / (i + 1);
      poch *= (n + 1 + i);
    }
    long double jfact = 1.0L;
    for (int t = 2; t <= j; ++t) jfact *= t;
    out += uj * SCL(2.0L * dpow / jfact);
    dpow *= d * d;
  }
  return out;
}

SCL chi_k_impl(int n, double dk, const DerivedConstants& dc) {
  const double G = dc.gamma_wg;
  const C a0 = dc.a0_pole;
  SCL odd = chi_k_odd_part(n, dk, dc);
  SCL pole = SCL(CL(2.0L / (static_cast<long double>(dk) * dk + 0.25L * G * G))) *
             SCL::pow_int(CL(-1.0, 0.0) / CL(a0.real(), a0.imag()), n + 1);
  SCL bracket = odd - pole;
  return SCL::factorial(n) * SCL(static_cast<long double>(G)) * bracket;
}

struct PhiSum {
  C value;
  double condition;
};

// phi_N = (1/(N-1)!) sum_n C(N-1,n) F(N,n) chi_{N-1-n}; the 1/(N-1)! C(N-1,n)
// weight is folded in as 1/(n!(N-1-n)!).
template <class ChiFn>
PhiSum phi_sum(const SystemParams& p, const DerivedConstants& dc, ChiFn&& chi) {
  const int N = p.n_emitters;
  SCL sum;
  double log_max = -std::numeric_limits<double>::infinity();
  std::vector<SCL> inv_fact(N);
  {
    SCL f(1.0L);
    for (int n = 0; n < N; ++n) {
      if (n >= 2) f *= SCL(static_cast<long double>(n));
      inv_fact[n] = f.reciprocal();
    }
  }
  for (int n = 0; n <= N - 1; ++n) {
    SCL term = f_coefficient_scaled(N, n, dc);
    term *= chi(N - 1 - n);
    term *= inv_fact[n];
    term *= inv_fact[N - 1 - n];
    log_max = std::max(log_max, term.log_abs());
    sum += term;
  }
  const double log_sum = sum.log_abs();
  const double condition = std::exp(std::min(700.0, log_max - log_sum));
  if (!(condition < kConditionLimit))
    throw PrecisionLossError(
        "phi closed form: cancellation beyond the condition guard", condition);
  return {sum.to_complex(), condition};
}

}  // namespace

std::complex<double> transmission_t(double k, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0))
    throw std::invalid_argument("transmission_t: beta in [0,1]");
  return 1.0 - 2.0 * beta / (1.0 - 2.0 * kI * k);
}

std::complex<double> transmission_t_pole(double k, double beta) {
  const C num = C(k, 0.5 * (1.0 - 2.0 * beta));
  const C den = C(k, 0.5);
  return num / den;
}

std::complex<double> bound_transmission(double E, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0))
    throw std::invalid_argument("bound_transmission: beta in [0,1]");
  return 1.0 - 4.0 * beta / (1.0 + beta - kI * E);
}

std::complex<double> bound_transmission_pole(double E, double beta) {
  return C(E, 1.0 - 3.0 * beta) / C(E, 1.0 + beta);
}

ScaledComplex f_coefficient(int n_emitters, int m, const SystemParams& p) {
  check_nm(n_emitters, m);
  SystemParams q = p;
  q.n_emitters = n_emitters;
  const SCL v = f_coefficient_scaled(n_emitters, m, DerivedConstants::from(q));
  const CL mant = v.mantissa();
  return ScaledComplex::from_parts(
      {static_cast<double>(mant.real()), static_cast<double>(mant.imag())},
      v.exponent2());
}

std::complex<double> chi_x(int n, double x, const SystemParams& p) {
  if (n < 0) throw std::invalid_argument("chi_x: n >= 0 required");
  return chi_x_impl(n, std::abs(x), DerivedConstants::from(p)).to_complex();
}

ScaledComplexL chi_x_scaled(int n, double ax, const DerivedConstants& dc) {
  return chi_x_impl(n, ax, dc);
}

std::complex<double> chi_k(int n, double delta_k, const SystemParams& p) {
  if (n < 0) throw std::invalid_argument("chi_k: n >= 0 required");
  return chi_k_impl(n, delta_k, DerivedConstants::from(p)).to_complex();
}

ScaledComplexL chi_k_scaled(int n, double delta_k, const DerivedConstants& dc) {
  return chi_k_impl(n, delta_k, dc);
}

std::complex<double> uncorrelated_amplitude(const SystemParams& p) {
  return ScaledComplex::pow_int(transmission_t(p.k0, p.beta), 2 * p.n_emitters)
      .to_complex();
}

std::complex<double> phi_exact_x(const SystemParams& p, double x) {
  p.validate();
  const int N = p.n_emitters;
  const double ax = std::abs(x);
  if (p.beta == 0.0) return 0.0;
  const DerivedConstants dc = DerivedConstants::from(p);
  if (p.beta == 1.0 && p.k0 == 0.0) {
    // gamma and the bound-state pole coincide; the extended-state eigenvalue
    // is exactly 1 and only the bound-state channel carries correlations.
    const C tt = ScaledComplex::pow_int(bound_transmission(0.0, 1.0), N).to_complex();
    return 2.0 * (1.0 - tt) * std::exp(-0.5 * ax);
  }
  return phi_sum(p, dc, [&](int m) { return chi_x_impl(m, ax, dc); }).value;
}

std::complex<double> psi_exact(const SystemParams& p, double x) {
  return uncorrelated_amplitude(p) - phi_exact_x(p, x);
}

std::complex<double> phi_k_exact(const SystemParams& p, double delta_k) {
  p.validate();
  if (p.beta == 0.0) return 0.0;
  const DerivedConstants dc = DerivedConstants::from(p);
  if (p.beta == 1.0 && p.k0 == 0.0) {
    // Fourier transform of 2(1 - ttilde^N) e^{-|x|/2}.
    const C tt =
        ScaledComplex::pow_int(bound_transmission(0.0, 1.0), p.n_emitters).to_complex();
    return 2.0 * (1.0 - tt) / (delta_k * delta_k + 0.25);
  }
  return phi_sum(p, dc, [&](int m) { return chi_k_impl(m, delta_k, dc); }).value;
}

}  // namespace wqed::chiral
