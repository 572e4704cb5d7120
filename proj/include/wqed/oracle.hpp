#pragma once

#include <complex>
#include <vector>

#include "wqed/parallel.hpp"
#include "wqed/params.hpp"
#include "wqed/quadrature.hpp"

namespace wqed::oracle {

using quad::QuadratureSpec;

struct ValueWithError {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
  bool converged = true;
};

/// psi_N(x_c=0, x) by direct adaptive quadrature of the eigenstate-projection
/// integral (the defining Delta-integral, oscillation nodes split, analytic
/// envelope tail). Valid for any N >= 1; the production path above the
/// closed-form limit.
ValueWithError psi_quadrature(const SystemParams& p, double x,
                              const QuadratureSpec& spec = {});

/// Spec name for the same operation.
inline ValueWithError phi_x_quadrature(const SystemParams& p, double x,
                                       const QuadratureSpec& spec = {}) {
  return psi_quadrature(p, x, spec);
}

/// Phi_M = Integral dk (s_k + s_{-k}) phi_M(k), resonant drive only.
ValueWithError phi_capital(int m_emitters, const SystemParams& p,
                           const QuadratureSpec& spec = {});

/// Exact transmitted-power integrals at resonance. Dispatches between the
/// per-M adaptive path (closed-form phi_M, small N) and the spectral-grid
/// recurrence (any N).
PowerBreakdown power_integrals(const SystemParams& p,
                               const QuadratureSpec& spec = {},
                               par::Exec mode = par::Exec::Parallel);

/// Both paths exposed for cross-validation.
PowerBreakdown power_integrals_adaptive(const SystemParams& p,
                                        const QuadratureSpec& spec = {},
                                        par::Exec mode = par::Exec::Parallel);
PowerBreakdown power_integrals_grid(const SystemParams& p,
                                    const QuadratureSpec& spec = {},
                                    par::Exec mode = par::Exec::Parallel);

/// phi_N sampled on the spectral grid by the per-emitter recurrence
/// (production spectrum path for large N).
SpectrumSamples phi_k_recurrence(const SystemParams& p,
                                 const QuadratureSpec& spec = {},
                                 par::Exec mode = par::Exec::Parallel);

struct FourierCheckReport {
  double max_rel_dev = 0.0;   // max |FFT - closed form| / max|phi|
  double spike_ratio = 0.0;   // |phi(0)| relative to neighbours (delta check)
  bool grid_resolved = true;
  std::size_t n_samples = 0;
};

/// Discrete Fourier transform of psi(x) samples against phi_N(Delta_k).
FourierCheckReport fourier_crosscheck(const SystemParams& p,
                                      std::size_t n_fft = 1 << 15,
                                      double x_span = 0.0,
                                      par::Exec mode = par::Exec::Parallel);

}  // namespace wqed::oracle
