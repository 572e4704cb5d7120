#pragma once

#include <complex>

#include "wqed/scaled_complex.hpp"

namespace wqed::specfun {

/// Maximum integer order accepted by the incomplete-gamma routines.
inline constexpr int kMaxGammaOrder = 512;

/// Upper incomplete gamma of integer order, Gamma_{n+1}(z) = n! e^{-z}
/// sum_{k=0}^{n} z^k/k!, via the exact finite sum. The scaled variant is the
/// workhorse; the plain-complex one saturates to inf when n! overflows.
ScaledComplex incomplete_gamma_upper_int_scaled(int n, std::complex<double> z);
std::complex<double> incomplete_gamma_upper_int(int n, std::complex<double> z);

/// Long-double-mantissa variant used inside the closed-form wavefunction sums.
ScaledComplexL incomplete_gamma_upper_int_scaledl(int n, std::complex<double> z);

/// Generalized hypergeometric 0F2(; b1, b2; z) by direct series summation.
/// Terms are added until |term| < 1e-16 |partial sum|; throws NumericsError
/// after max_terms without convergence.
double hyp0f2(double b1, double b2, double z, int max_terms = 100000);

/// ln C(n, k); rejects k > n.
double log_binomial(long long n, long long k);

}  // namespace wqed::specfun
