#pragma once

// Test-only oracles, deliberately independent of the library's own
// integration and summation paths.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace testsup {

using C = std::complex<double>;
using CL = std::complex<long double>;

// Plain recursive adaptive Simpson; enough accuracy for oracle duty and
// entirely separate from the Gauss-Kronrod machinery under test.
inline C adaptive_simpson_impl(const std::function<C(double)>& f, double a,
                               double b, C fa, C fm, C fb, C whole, double tol,
                               int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const C flm = f(lm), frm = f(rm);
  const C left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const C right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const C delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive_simpson_impl(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson_impl(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

inline C adaptive_simpson(const std::function<C(double)>& f, double a, double b,
                          double tol = 1e-12, int depth = 40) {
  const C fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const C whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_impl(f, a, b, fa, fm, fb, whole, tol, depth);
}

// m-th derivative of an analytic function at z0 by the Cauchy integral on a
// circle of radius r, trapezoid rule (spectrally accurate).
inline C cauchy_derivative(const std::function<C(C)>& f, C z0, int m, double r,
                           int n_nodes = 1024) {
  C acc{0.0, 0.0};
  for (int j = 0; j < n_nodes; ++j) {
    const double th = 2.0 * M_PI * j / n_nodes;
    const C w = std::polar(r, th);
    acc += f(z0 + w) * std::polar(std::pow(r, -m), -m * th);
  }
  double mfact = 1.0;
  for (int i = 2; i <= m; ++i) mfact *= i;
  return acc * (mfact / static_cast<double>(n_nodes));
}

// Extended-precision series for 0F2.
inline long double hyp0f2_ld(long double b1, long double b2, long double z,
                             int max_terms = 200000) {
  long double sum = 1.0L, term = 1.0L;
  for (int k = 0; k < max_terms; ++k) {
    term *= z / ((b1 + k) * (b2 + k) * (k + 1));
    sum += term;
    if (std::abs(term) < 1e-22L * std::abs(sum)) break;
  }
  return sum;
}

// Extended-precision finite sum for the integer-order upper incomplete gamma,
// usable while n! and z^n stay inside the long-double range.
inline CL igamma_upper_ld(int n, CL z) {
  if (z == CL{}) {
    long double f = 1.0L;
    for (int i = 2; i <= n; ++i) f *= i;
    return {f, 0.0L};
  }
  CL term = 1.0L;
  for (int i = 0; i < n; ++i) term *= z;
  CL sum = term;
  for (int k = n; k >= 1; --k) {
    term *= static_cast<long double>(k) / z;
    sum += term;
  }
  return std::exp(-z) * sum;
}

// Kolmogorov-Smirnov distance against the uniform [0,1) cdf.
inline double ks_uniform(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double u = samples[i];
    d = std::max(d, std::abs((i + 1) / n - u));
    d = std::max(d, std::abs(u - i / n));
  }
  return d;
}

}  // namespace testsup
