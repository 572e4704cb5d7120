#include "wqed/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

#include "wqed/quadrature.hpp"
#include "wqed/specfun.hpp"

namespace wqed::asymptotics {

namespace {
constexpr double kSeriesSwitch = 25.0;  // |y| above which the 0F2 pair cancels
}

double xi(const SystemParams& p) {
  return std::sqrt(static_cast<double>(p.n_emitters) * p.beta * (1.0 - p.beta));
}

AsymptoticScaling scaling(const SystemParams& p, double threshold) {
  AsymptoticScaling s;
  s.xi = xi(p);
  s.gtilde_zero = (s.xi > 0.0)
                      ? p.beta * p.beta / (4.0 * M_PI * s.xi * s.xi)
                      : std::numeric_limits<double>::infinity();
  s.width_scale = (s.xi > 0.0) ? 1.0 / s.xi : std::numeric_limits<double>::infinity();
  s.regime_ok = s.xi * s.xi >= threshold;
  return s;
}

double phi_asymp_k(const SystemParams& p, double delta_k) {
  if (delta_k == 0.0) return 0.0;
  const double x2 = xi(p) * xi(p);
  return p.beta * std::exp(-x2 / (delta_k * delta_k)) / (delta_k * delta_k);
}

double pair_transmission_approx(const SystemParams& p, double delta_k) {
  if (delta_k == 0.0) return 0.0;
  const double x2 = xi(p) * xi(p);
  return std::exp(-x2 / (delta_k * delta_k));
}

double gbig(double y) {
  y = std::abs(y);
  if (y <= kSeriesSwitch) {
    const double z = 0.25 * y * y;
    return std::sqrt(M_PI) * specfun::hyp0f2(0.5, 0.5, z) -
           M_PI * y * specfun::hyp0f2(1.0, 1.5, z);
  }
  // Oscillatory quadrature of the defining integral; the e^{-1/k^2} factor
  // kills everything below k ~ 0.15.
  auto f = [y](double k) -> std::complex<double> {
    return {std::cos(k * y) * std::exp(-1.0 / (k * k)) / (k * k), 0.0};
  };
  const double tol = 1e-11;
  const double dmax = std::max(300.0, std::sqrt(2.0 / (y * tol)));
  quad::Result core = quad::integrate_oscillatory(f, 0.05, 10.0, y, tol, 1e-10, 8000);
  std::complex<double> total = core.value;
  double lo = 10.0;
  while (lo < dmax) {
    const double hi = std::min(dmax, lo * 2.0);
    quad::Result seg = quad::integrate_oscillatory(f, lo, hi, y, tol, 1e-10, 8000);
    total += seg.value;
    lo = hi;
  }
  return 2.0 * total.real();
}

double f_n_of_x(const SystemParams& p, double x) {
  const double xin = xi(p);
  if (xin <= 0.0)
    throw std::invalid_argument("f_n_of_x: requires xi > 0 (0 < beta < 1, N >= 1)");
  return gbig(xin * std::abs(x)) / xin;
}

double gtilde2_asymp(const SystemParams& p, double x) {
  const double b = p.beta;
  const double fn = f_n_of_x(p, x);
  return b * b / (4.0 * M_PI * M_PI) * fn * fn;
}

double g2_asymp(const SystemParams& p, double x) {
  const double t0 = 1.0 - 2.0 * p.beta;
  const double log_t4n =
      4.0 * p.n_emitters * std::log(std::abs(t0) + 1e-300);
  return gtilde2_asymp(p, x) * std::exp(-log_t4n);
}

PowerBreakdown power_asymp(const SystemParams& p) {
  PowerBreakdown pb;
  const double t0 = 1.0 - 2.0 * p.beta;
  pb.linear = std::pow(t0 * t0, p.n_emitters);
  const double xin = xi(p);
  if (xin <= 0.0) return pb;  // no nonlinear channel at beta = 0 or 1
  const double u = 1.0 - 2.0 * p.beta * (1.0 - p.beta);
  const double xi3 = xin * xin * xin;
  const double total_nl =
      p.drive * p.beta * (3.0 - 2.0 * p.beta * (1.0 - p.beta)) /
      (4.0 * std::sqrt(M_PI) * xi3 * u);
  pb.pair = p.drive * p.beta / (8.0 * std::sqrt(2.0 * M_PI) * xi3);
  pb.mixed = total_nl - pb.pair;
  return pb;
}

double pair_fraction(double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("pair_fraction: requires 0 < beta < 1");
  const double u = 1.0 - 2.0 * beta * (1.0 - beta);
  return 1.0 / (2.0 * std::sqrt(2.0) - 1.0 + 4.0 * std::sqrt(2.0) / u);
}

}  // namespace wqed::asymptotics
