#pragma once

#include <complex>

#include "wqed/params.hpp"
#include "wqed/scaled_complex.hpp"

namespace wqed::chiral {

/// Above this N the closed form is not advertised; callers fall back to the
/// quadrature oracle.
inline constexpr int kClosedFormMaxN = 150;

/// Condition guard: a closed-form sum whose largest term exceeds the result
/// by this factor is rejected as precision loss.
inline constexpr double kConditionLimit = 1e12;

/// Single-photon transmission t_k = 1 - 2b/(1 - 2ik), k in units gamma_tot.
std::complex<double> transmission_t(double k, double beta);

/// Same value from the supplementary pole form; kept as the algebraic
/// cross-check of the printed expressions.
std::complex<double> transmission_t_pole(double k, double beta);

/// Bound-state transmission ttilde_E = 1 - 4b/(1 + b - iE).
std::complex<double> bound_transmission(double E, double beta);
std::complex<double> bound_transmission_pole(double E, double beta);

/// F_{k0}(N, m): m-th derivative of [ (z^2-a^2)/(z+gamma) ]^N at z = gamma,
/// evaluated by the explicit finite sum with all factorials in scaled
/// arithmetic. Requires 0 <= m <= N-1.
ScaledComplex f_coefficient(int n_emitters, int m, const SystemParams& p);

/// chi_{k0,n}(x) combining both incomplete-gamma branches.
std::complex<double> chi_x(int n, double x, const SystemParams& p);
ScaledComplexL chi_x_scaled(int n, double ax, const DerivedConstants& dc);

/// k-space chi_{n,k0}(Delta_k); the 1/Delta singularities are removable and
/// evaluated by series below |Delta| ~ 0.01/(n+1).
std::complex<double> chi_k(int n, double delta_k, const SystemParams& p);
ScaledComplexL chi_k_scaled(int n, double delta_k, const DerivedConstants& dc);

/// Correlated part phi_N(x) with psi_N(x) = t_{k0}^{2N} - phi_N(x), x_c = 0.
/// Throws PrecisionLossError when the scaled sum cancels beyond the guard.
std::complex<double> phi_exact_x(const SystemParams& p, double x);

/// Exact two-photon relative wavefunction psi_N(x_c=0, x).
std::complex<double> psi_exact(const SystemParams& p, double x);

/// Correlated k-space amplitude phi_N(Delta_k).
std::complex<double> phi_k_exact(const SystemParams& p, double delta_k);

/// t_{k0}^{2N} as a complex number (real (1-2b)^{2N} at resonance).
std::complex<double> uncorrelated_amplitude(const SystemParams& p);

}  // namespace wqed::chiral
