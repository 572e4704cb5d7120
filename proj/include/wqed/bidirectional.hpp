#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wqed/parallel.hpp"
#include "wqed/params.hpp"

namespace wqed::bidir {

/// Random inter-emitter propagation phases at the drive frequency.
/// Reproducible from the seed alone.
struct EmitterChain {
  int n = 1;
  std::vector<double> phases;  // n-1 phases in [0, 2pi)
  std::uint64_t seed = 0;
};

EmitterChain sample_chain(int n, std::uint64_t seed);

struct SingleExcSolution {
  Eigen::VectorXcd amplitudes;        // emitter coherences, drive amplitude 1
  std::complex<double> t_total;       // forward transmission
  std::complex<double> r_total;       // backward (reflected) amplitude
};

/// Steady state of the N x N effective-coupling system,
/// M_jj = i delta - 1/2, M_jl = -(beta T(j>l) + beta_l T(j<l)) e^{i Phi_jl}.
SingleExcSolution single_excitation_solve(const EmitterChain& chain,
                                          const SystemParams& p,
                                          double detuning);

/// Steady-state pair amplitudes on the N(N-1)/2 hard-core pair basis,
/// sourced by the drive acting on the single-excitation amplitudes.
Eigen::VectorXcd two_excitation_solve(const EmitterChain& chain,
                                      const SystemParams& p,
                                      const SingleExcSolution& single,
                                      double detuning = 0.0);

struct BidirObservables {
  std::vector<double> g2;                        // on the requested |x| grid
  std::vector<std::complex<double>> psi;         // two-photon amplitude A(x)
  PowerBreakdown power;                          // per unit P_in
  bool g2_unnormalized = false;                  // |t| ~ 0 guard
};

/// Two-time output amplitudes and power assembled through the input-output
/// relations and the conditional-evolution (quantum-regression) propagator.
BidirObservables output_observables(const EmitterChain& chain,
                                    const SystemParams& p,
                                    std::span<const double> x_grid);

struct EnsembleResult {
  std::vector<BidirObservables> per_realization;   // successful runs
  std::vector<double> g2_mean, g2_std;
  std::vector<double> psi_abs_mean;
  PowerBreakdown power_mean;
  double power_total_std = 0.0;
  int n_realizations = 0;                          // successes
  std::vector<std::pair<int, std::string>> failures;
  std::uint64_t master_seed = 0;
  SystemParams params;
};

/// Realization i uses derive_seed(master_seed, i); the aggregate is
/// independent of execution order and thread count.
EnsembleResult ensemble_run(const SystemParams& p, int n_realizations,
                            std::uint64_t master_seed,
                            std::span<const double> x_grid,
                            par::Exec mode = par::Exec::Parallel);

}  // namespace wqed::bidir
