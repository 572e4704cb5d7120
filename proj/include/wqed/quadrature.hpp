#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace wqed::quad {

/// Tolerances for the adaptive oscillatory integrals. tail_cutoff_delta = 0
/// picks the cutoff automatically from the analytic 1/Delta^2 envelope.
struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 4000;
  double tail_cutoff_delta = 0.0;
};

struct Result {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
  std::size_t evals = 0;
  bool converged = true;
};

/// Adaptive Gauss7/Kronrod15 on [a,b] for a complex-valued integrand.
Result integrate_gk(const std::function<std::complex<double>(double)>& f,
                    double a, double b, double abs_tol, double rel_tol,
                    int max_subdivisions);

/// Same driver for integrands with a cos(w x)/sin(w x) factor: the range
/// [a,b] is pre-split at the oscillation half-periods pi/w before the
/// adaptive pass. w = 0 degenerates to a plain panel split.
Result integrate_oscillatory(const std::function<std::complex<double>(double)>& f,
                             double a, double b, double w, double abs_tol,
                             double rel_tol, int max_subdivisions);

}  // namespace wqed::quad
