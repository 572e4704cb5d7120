#pragma once

#include "wqed/params.hpp"

namespace wqed::asymptotics {

inline constexpr double kRegimeThreshold = 10.0;  // xi^2 above which the limit holds

struct AsymptoticScaling {
  double xi = 0.0;           // sqrt(N b (1-b))
  double gtilde_zero = 0.0;  // b^2 / (4 pi xi^2)
  double width_scale = 0.0;  // 1/(xi gamma_tot)
  bool regime_ok = false;    // xi^2 >= threshold (advisory only)
};

double xi(const SystemParams& p);
AsymptoticScaling scaling(const SystemParams& p,
                          double threshold = kRegimeThreshold);

/// phi_N^asymp(Delta_k) = Gamma exp(-xi^2/Delta_k^2) / Delta_k^2.
double phi_asymp_k(const SystemParams& p, double delta_k);

/// The pairwise transmission approximation t_D^N t_{-D}^N ~ exp(-xi^2/D^2).
double pair_transmission_approx(const SystemParams& p, double delta_k);

/// Universal shape integral G(y) = Integral dk cos(ky) e^{-1/k^2}/k^2,
/// series for small y, oscillatory quadrature beyond.
double gbig(double y);

/// F_N(x) = G(xi x)/xi in gamma_tot = 1 units (hypergeometric form).
double f_n_of_x(const SystemParams& p, double x);

/// Universal correlation function and its normalized version.
double gtilde2_asymp(const SystemParams& p, double x);
double g2_asymp(const SystemParams& p, double x);

/// Eq.-(7)-style power: linear (1-2b)^{2N} plus the 1/N^{3/2} nonlinear term,
/// split into the pair and mixed sub-terms whose sum is the printed formula.
PowerBreakdown power_asymp(const SystemParams& p);

/// Nonlinear pair-to-mixed power ratio 1/(2 sqrt2 - 1 + 4 sqrt2/(1-2b(1-b))).
double pair_fraction(double beta);

}  // namespace wqed::asymptotics
