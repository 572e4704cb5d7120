// Timing harness comparing the serial reference kernels against the
// OpenMP-parallel ones on the three hot paths: wavefunction grids, the
// spectral power recurrence, and disorder ensembles.

#include <cstdio>
#include <vector>

#include "wqed/bidirectional.hpp"
#include "wqed/observables.hpp"
#include "wqed/oracle.hpp"
#include "wqed/parallel.hpp"

#include <chrono>

namespace {

double now() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <class F>
double time_it(F&& f) {
  const double t0 = now();
  f();
  return now() - t0;
}

void report(const char* name, double serial_s, double parallel_s) {
  std::printf("%-28s serial %8.3f s   parallel %8.3f s   speedup %5.2fx\n",
              name, serial_s, parallel_s,
              parallel_s > 0 ? serial_s / parallel_s : 0.0);
}

}  // namespace

int main() {
  using wqed::par::Exec;
  std::printf("threads available: %d (OpenMP %s)\n", wqed::par::max_threads(),
              wqed::par::openmp_enabled() ? "on" : "off");

  {
    wqed::SystemParams p;
    p.n_emitters = 30;
    p.beta = 0.05;
    std::vector<double> x(400);
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = -20.0 + 40.0 * static_cast<double>(i) / (x.size() - 1);
    double s = 0, q = 0;
    const double ts = time_it([&] {
      auto w = wqed::observables::psi_grid(p, x, Exec::Serial);
      s += std::norm(w.values[0]);
    });
    const double tp = time_it([&] {
      auto w = wqed::observables::psi_grid(p, x, Exec::Parallel);
      q += std::norm(w.values[0]);
    });
    report("psi grid (closed form)", ts, tp);
  }

  {
    wqed::SystemParams p;
    p.n_emitters = 600;
    p.beta = 0.1;
    p.drive = 0.1;
    const double ts = time_it(
        [&] { (void)wqed::oracle::power_integrals_grid(p, {}, Exec::Serial); });
    const double tp = time_it(
        [&] { (void)wqed::oracle::power_integrals_grid(p, {}, Exec::Parallel); });
    report("power recurrence N=600", ts, tp);
  }

  {
    wqed::SystemParams p;
    p.n_emitters = 20;
    p.beta = 0.05;
    p.beta_l = 0.05;
    p.drive = 0.02;
    std::vector<double> x(101);
    for (std::size_t i = 0; i < x.size(); ++i)
      x[i] = -10.0 + 20.0 * static_cast<double>(i) / (x.size() - 1);
    const double ts = time_it(
        [&] { (void)wqed::bidir::ensemble_run(p, 40, 7, x, Exec::Serial); });
    const double tp = time_it(
        [&] { (void)wqed::bidir::ensemble_run(p, 40, 7, x, Exec::Parallel); });
    report("bidir ensemble N=20 x40", ts, tp);
  }
  return 0;
}
