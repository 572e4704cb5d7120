#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace wqed {

/// Physical configuration. All rates are handled internally in units of
/// gamma_tot = 1; physical units enter only through gamma_tot_hz at the
/// output boundary.
struct SystemParams {
  int n_emitters = 1;       // N
  double beta = 0.1;        // coupling to the forward guided mode
  double beta_l = 0.0;      // coupling to the backward mode (0 for chiral)
  double k0 = 0.0;          // drive detuning, units of gamma_tot
  double drive = 0.0;       // P_in / P_sat
  double gamma_tot_hz = 0.0;  // physical Gamma_tot / 2pi in Hz; 0 = unitless

  double gamma_wg() const { return beta; }             // Gamma = beta Gamma_tot
  double p_sat_hz() const;                              // photons/s, needs units
  double p_in_hz() const;                               // photons/s, needs units
  bool has_units() const { return gamma_tot_hz > 0.0; }

  /// Throws std::invalid_argument listing every violated constraint.
  void validate() const;
};

/// Pole positions and scales of the chiral closed form, units gamma_tot = 1.
struct DerivedConstants {
  std::complex<double> gamma_pole;  // k0 + i/2
  std::complex<double> a_pole;      // k0 + i(1-2b)/2
  std::complex<double> a0_pole;     // k0 + i(1-b)/2
  std::complex<double> q;           // gamma^2 - a^2
  double xi;                        // sqrt(N b (1-b))
  double t0;                        // 1 - 2b (resonant single-emitter t)
  double gamma_wg;                  // b

  static DerivedConstants from(const SystemParams& p);
};

enum class WfMethod { ClosedForm, Quadrature, Asymptotic };

struct WavefunctionSamples {
  std::vector<double> x_grid;                      // units 1/gamma_tot
  std::vector<std::complex<double>> values;        // psi_N(x_c=0, x)
  WfMethod method = WfMethod::ClosedForm;
  SystemParams params;
};

struct SpectrumSamples {
  std::vector<double> k_grid;                      // Delta_k, units gamma_tot
  std::vector<std::complex<double>> values;        // phi_N(Delta_k)
  WfMethod method = WfMethod::ClosedForm;
  SystemParams params;
};

/// Transmitted power per unit P_in, split by scattering channel.
struct PowerBreakdown {
  double linear = 0.0;  // t0^{2N}
  double pair = 0.0;    // S22 correlated pairs
  double mixed = 0.0;   // S12, one photon transmitted / one lost
  double total() const { return linear + pair + mixed; }
  double nonlinear() const { return pair + mixed; }
  std::optional<double> physical_rate_hz;  // photons/s when units are known
};

}  // namespace wqed
