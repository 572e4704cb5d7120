#include "wqed/specfun.hpp"

#include <cmath>
#include <stdexcept>

#include "wqed/errors.hpp"

namespace wqed::specfun {

namespace {

template <class R>
BasicScaledComplex<R> igamma_impl(int n, std::complex<double> z) {
  using SC = BasicScaledComplex<R>;
  if (n < 0) throw std::invalid_argument("incomplete_gamma: order must be >= 0");
  if (n > kMaxGammaOrder)
    throw std::invalid_argument("incomplete_gamma: order exceeds configured maximum");
  if (!(std::isfinite(z.real()) && std::isfinite(z.imag())))
    throw std::invalid_argument("incomplete_gamma: nonfinite argument");
  if (z == std::complex<double>(0.0, 0.0)) return SC::factorial(n);

  // Gamma_{n+1}(z) = e^{-z} sum_{k=0}^n (n!/k!) z^k, accumulated backward
  // from the k = n term so every step multiplies by the small ratio k/z.
  const std::complex<R> zl(static_cast<R>(z.real()), static_cast<R>(z.imag()));
  SC term = SC::pow_int(std::complex<R>(zl), n);
  SC sum = term;
  for (int k = n; k >= 1; --k) {
    term *= SC(std::complex<R>(static_cast<R>(k), R(0)) / zl);
    sum += term;
  }
  return SC::exp(-z) * sum;
}

}  // namespace

ScaledComplex incomplete_gamma_upper_int_scaled(int n, std::complex<double> z) {
  return igamma_impl<double>(n, z);
}

ScaledComplexL incomplete_gamma_upper_int_scaledl(int n, std::complex<double> z) {
  return igamma_impl<long double>(n, z);
}

std::complex<double> incomplete_gamma_upper_int(int n, std::complex<double> z) {
  return incomplete_gamma_upper_int_scaled(n, z).to_complex();
}

double hyp0f2(double b1, double b2, double z, int max_terms) {
  auto nonpositive_int = [](double b) {
    return b <= 0.0 && b == std::floor(b);
  };
  if (nonpositive_int(b1) || nonpositive_int(b2))
    throw std::invalid_argument("hyp0f2: lower parameter is a nonpositive integer");
  if (z < 0.0) throw std::invalid_argument("hyp0f2: requires z >= 0");

  double sum = 1.0;
  double term = 1.0;
  for (int k = 0; k < max_terms; ++k) {
    term *= z / ((b1 + k) * (b2 + k) * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) return sum;
  }
  throw NumericsError("hyp0f2: series did not converge within max_terms");
}

double log_binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n)
    throw std::invalid_argument("log_binomial: requires 0 <= k <= n");
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace wqed::specfun
