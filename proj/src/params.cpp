#include "wqed/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wqed {

double SystemParams::p_sat_hz() const {
  if (!has_units() || beta <= 0.0) return 0.0;
  return 2.0 * M_PI * gamma_tot_hz / beta;  // Gamma_tot / beta in photons/s
}

double SystemParams::p_in_hz() const { return drive * p_sat_hz(); }

void SystemParams::validate() const {
  std::ostringstream bad;
  if (n_emitters < 1) bad << "n_emitters must be >= 1; ";
  if (!(beta >= 0.0 && beta <= 1.0)) bad << "beta must be in [0,1]; ";
  if (!(beta_l >= 0.0)) bad << "beta_l must be >= 0; ";
  if (beta + beta_l > 1.0 + 1e-12) bad << "beta + beta_l must be <= 1; ";
  if (!std::isfinite(k0)) bad << "k0 must be finite; ";
  if (!(drive >= 0.0)) bad << "drive must be >= 0; ";
  if (gamma_tot_hz < 0.0) bad << "gamma_tot_hz must be >= 0; ";
  const std::string msg = bad.str();
  if (!msg.empty()) throw std::invalid_argument("SystemParams: " + msg);
}

DerivedConstants DerivedConstants::from(const SystemParams& p) {
  DerivedConstants d;
  const double b = p.beta;
  d.gamma_pole = {p.k0, 0.5};
  d.a_pole = {p.k0, 0.5 * (1.0 - 2.0 * b)};
  d.a0_pole = {p.k0, 0.5 * (1.0 - b)};
  d.q = d.gamma_pole * d.gamma_pole - d.a_pole * d.a_pole;
  d.xi = std::sqrt(static_cast<double>(p.n_emitters) * b * (1.0 - b));
  d.t0 = 1.0 - 2.0 * b;
  d.gamma_wg = b;
  return d;
}

}  // namespace wqed
