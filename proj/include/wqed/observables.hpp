#pragma once

#include <complex>
#include <span>
#include <vector>

#include "wqed/oracle.hpp"
#include "wqed/params.hpp"

namespace wqed::observables {

/// g2 at beta = 0.5 has an exactly dark linear channel; the result is then
/// the unnormalized Gtilde2 with the flag set.
struct G2Result {
  double value = 0.0;
  bool unnormalized = false;
};

/// Best available psi path: closed form, quadrature fallback above the
/// closed-form N limit or on precision loss.
std::complex<double> psi_best(const SystemParams& p, double x);
WfMethod psi_best_method(const SystemParams& p);

WavefunctionSamples psi_grid(const SystemParams& p, std::span<const double> x,
                             par::Exec mode = par::Exec::Parallel);

G2Result g2(const SystemParams& p, double x);
double g2_tilde(const SystemParams& p, double x);

std::vector<double> g2_grid(const SystemParams& p, std::span<const double> x,
                            par::Exec mode = par::Exec::Parallel);

/// Delegates to oracle::power_integrals and attaches the physical rate when
/// units are present.
PowerBreakdown transmitted_power(const SystemParams& p,
                                 const oracle::QuadratureSpec& spec = {},
                                 par::Exec mode = par::Exec::Parallel);

/// Coincidences: C = P_in^2 Integral_{|x|<window} Gtilde2(x) dx in events/s.
/// window in units 1/gamma_tot; physical units required.
double coincidence_rate_hz(const SystemParams& p, double window = 3.0);

/// Zero-delay correlation renormalized by the full transmitted power
/// (weak-drive Gtilde2 against linear x total; see README on the 25-vs-47
/// normalization).
double g2_corrected(const SystemParams& p,
                    const oracle::QuadratureSpec& spec = {});

}  // namespace wqed::observables
