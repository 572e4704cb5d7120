#include "wqed/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "wqed/asymptotics.hpp"
#include "wqed/bidirectional.hpp"
#include "wqed/chiral_exact.hpp"
#include "wqed/errors.hpp"
#include "wqed/observables.hpp"
#include "wqed/oracle.hpp"
#include "wqed/rng.hpp"
#include "wqed/specfun.hpp"
#include "wqed/version.hpp"

namespace wqed::scenarios {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i)
    v[i] = a + (b - a) * static_cast<double>(i) / (n - 1);
  return v;
}

std::vector<int> log_int_grid(int lo, int hi, int n) {
  std::vector<int> v;
  const double la = std::log(static_cast<double>(lo));
  const double lb = std::log(static_cast<double>(hi));
  for (int i = 0; i < n; ++i) {
    const int x = static_cast<int>(std::lround(
        std::exp(la + (lb - la) * static_cast<double>(i) / std::max(1, n - 1))));
    if (v.empty() || x > v.back()) v.push_back(x);
  }
  return v;
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, const std::vector<std::string>& columns)
      : path_(path.string()), out_(path) {
    if (!out_) throw std::runtime_error("io: cannot open " + path_.string());
    for (std::size_t i = 0; i < columns.size(); ++i)
      out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
  }
  void row(const std::vector<double>& vals) {
    for (std::size_t i = 0; i < vals.size(); ++i)
      out_ << (i ? "," : "") << fmt17(vals[i]);
    out_ << "\n";
  }
  void close() {
    out_.close();
    if (!out_) throw std::runtime_error("io: write failed for " + path_.string());
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

struct Runner {
  const config::ScenarioConfig& cfg;
  par::Exec mode;
  fs::path dir;
  RunResult result;
  json meta_extra;

  void emit(const std::string& name, const std::vector<std::string>& cols,
            const std::vector<std::vector<double>>& rows) {
    CsvWriter w(dir / name, cols);
    for (const auto& r : rows) w.row(r);
    w.close();
    result.files.push_back((dir / name).string());
  }
};

void run_g2_curve(Runner& r) {
  const auto x = linspace(-r.cfg.x_max, r.cfg.x_max, r.cfg.x_points);
  const auto g2 = observables::g2_grid(r.cfg.params, x, r.mode);
  std::vector<std::vector<double>> rows;
  rows.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) rows.push_back({x[i], g2[i]});
  r.emit("g2_curve.csv", {"x_gamma_tot", "g2"}, rows);
  r.meta_extra["psi_method"] =
      observables::psi_best_method(r.cfg.params) == WfMethod::ClosedForm
          ? "closed-form"
          : "quadrature";
}

void run_g2_collapse(Runner& r) {
  for (const auto& [beta, n] : r.cfg.collapse_pairs) {
    SystemParams p = r.cfg.params;
    p.beta = beta;
    p.n_emitters = n;
    const double xin = asymptotics::xi(p);
    const auto xs = linspace(-5.0, 5.0, r.cfg.x_points);  // units 1/(xi Gtot)
    std::vector<double> x(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) x[i] = xs[i] / xin;
    const WavefunctionSamples w = observables::psi_grid(p, x, r.mode);
    const double scale = 4.0 * M_PI * xin * xin / (beta * beta);
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < xs.size(); ++i)
      rows.push_back({xs[i], std::norm(w.values[i]) * scale});
    std::ostringstream name;
    name << "collapse_beta" << beta << "_n" << n << ".csv";
    r.emit(name.str(), {"x_xi_gamma_tot", "gtilde2_scaled"}, rows);
  }
}

void run_spectrum(Runner& r) {
  const SystemParams& p = r.cfg.params;
  const double xin = asymptotics::xi(p);
  const double kmax = r.cfg.k_max > 0.0 ? r.cfg.k_max : std::max(4.0, 3.0 * xin);
  const auto k = linspace(-kmax, kmax, r.cfg.k_points);

  std::vector<double> phi2(k.size());
  std::string method = "closed-form";
  bool closed_ok = p.n_emitters <= chiral::kClosedFormMaxN;
  if (closed_ok) {
    try {
      (void)chiral::phi_k_exact(p, 0.0);
    } catch (const PrecisionLossError&) {
      closed_ok = false;
    }
  }
  if (closed_ok) {
    par::for_each_index(k.size(), r.mode, [&](std::size_t i) {
      phi2[i] = std::norm(chiral::phi_k_exact(p, k[i]));
    });
  } else {
    method = "quadrature";
    const SpectrumSamples s = oracle::phi_k_recurrence(p, r.cfg.tolerances, r.mode);
    // linear interpolation from the engine grid (values even in k)
    par::for_each_index(k.size(), r.mode, [&](std::size_t i) {
      const double ak = std::abs(k[i]);
      auto it = std::lower_bound(s.k_grid.begin(), s.k_grid.end(), ak);
      if (it == s.k_grid.end()) {
        phi2[i] = 0.0;
        return;
      }
      const std::size_t hi = static_cast<std::size_t>(it - s.k_grid.begin());
      if (hi == 0) {
        phi2[i] = std::norm(s.values[0]);
        return;
      }
      const double t = (ak - s.k_grid[hi - 1]) / (s.k_grid[hi] - s.k_grid[hi - 1]);
      const std::complex<double> v =
          s.values[hi - 1] * (1.0 - t) + s.values[hi] * t;
      phi2[i] = std::norm(v);
    });
  }
  double peak = 0.0;
  for (double v : phi2) peak = std::max(peak, v);
  std::vector<std::vector<double>> rows, rows_a;
  for (std::size_t i = 0; i < k.size(); ++i) {
    rows.push_back({k[i], phi2[i], peak > 0 ? phi2[i] / peak : 0.0});
    const double pa = asymptotics::phi_asymp_k(p, k[i]);
    rows_a.push_back({k[i], pa * pa});
  }
  double peak_a = 0.0;
  for (auto& row : rows_a) peak_a = std::max(peak_a, row[1]);
  for (auto& row : rows_a) row.push_back(peak_a > 0 ? row[1] / peak_a : 0.0);
  r.emit("spectrum_exact.csv", {"delta_k", "phi2", "phi2_normalized"}, rows);
  r.emit("spectrum_asymp.csv", {"delta_k", "phi2", "phi2_normalized"}, rows_a);
  r.meta_extra["spectrum_method"] = method;
}

void run_power_scan(Runner& r) {
  const auto ns = log_int_grid(r.cfg.n_min, r.cfg.n_max, r.cfg.n_points);
  std::vector<std::vector<double>> rows(ns.size());
  std::vector<std::string> errs(ns.size());
  // parallelism lives inside power_integrals; keep the scan loop ordered
  for (std::size_t i = 0; i < ns.size(); ++i) {
    SystemParams p = r.cfg.params;
    p.n_emitters = ns[i];
    try {
      const PowerBreakdown pb =
          observables::transmitted_power(p, r.cfg.tolerances, r.mode);
      const PowerBreakdown pa = asymptotics::power_asymp(p);
      rows[i] = {static_cast<double>(ns[i]), pb.linear, pb.pair,
                 pb.mixed,                   pb.total(), pa.total()};
    } catch (const NumericsError& e) {
      errs[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < ns.size(); ++i)
    if (!errs[i].empty())
      throw ToleranceError("power-scan at n=" + std::to_string(ns[i]) + ": " +
                               errs[i],
                           0.0);
  r.emit("power_scan.csv",
         {"n", "linear", "pair", "mixed", "total", "asymptotic_total"}, rows);
}

void run_bidir_ensemble(Runner& r) {
  const auto x = linspace(-r.cfg.x_max, r.cfg.x_max, r.cfg.x_points);
  const bidir::EnsembleResult res = bidir::ensemble_run(
      r.cfg.params, r.cfg.realizations, r.cfg.master_seed, x, r.mode);
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < x.size(); ++i)
    rows.push_back({x[i], res.g2_mean[i], res.g2_std[i],
                    res.g2_std[i] / std::sqrt(std::max(1, res.n_realizations))});
  r.emit("bidir_g2.csv", {"x_gamma_tot", "g2_mean", "g2_std", "g2_stderr"}, rows);

  // exact chiral reference for the same parameters
  SystemParams chir = r.cfg.params;
  chir.beta_l = 0.0;
  const auto g2ref = observables::g2_grid(chir, x, r.mode);
  std::vector<std::vector<double>> rrows;
  for (std::size_t i = 0; i < x.size(); ++i) rrows.push_back({x[i], g2ref[i]});
  r.emit("bidir_reference_g2.csv", {"x_gamma_tot", "g2_exact_chiral"}, rrows);

  r.emit("bidir_power.csv",
         {"linear_mean", "pair_mean", "mixed_mean", "total_mean", "total_std"},
         {{res.power_mean.linear, res.power_mean.pair, res.power_mean.mixed,
           res.power_mean.total(), res.power_total_std}});

  r.meta_extra["n_realizations_ok"] = res.n_realizations;
  json fails = json::array();
  for (const auto& [idx, what] : res.failures)
    fails.push_back({{"realization", idx}, {"error", what}});
  r.meta_extra["failures"] = fails;
}

void run_experiment_rates(Runner& r) {
  const SystemParams& p = r.cfg.params;
  const PowerBreakdown pb =
      observables::transmitted_power(p, r.cfg.tolerances, r.mode);
  const double pin = p.p_in_hz();
  const observables::G2Result g0 = observables::g2(p, 0.0);
  const double coinc = observables::coincidence_rate_hz(p);
  const double g2c = observables::g2_corrected(p, r.cfg.tolerances);
  const double power_hz = pb.total() * pin;
  const double lin_over_nl =
      pb.nonlinear() > 0.0 ? pb.linear / pb.nonlinear() : 0.0;

  r.emit("experiment_rates.csv",
         {"p_in_hz", "power_hz", "linear_hz", "nonlinear_hz",
          "linear_over_nonlinear", "g2_0", "g2_corrected", "coincidence_hz"},
         {{pin, power_hz, pb.linear * pin, pb.nonlinear() * pin, lin_over_nl,
           g0.value, g2c, coinc}});

  r.meta_extra["power_hz"] = power_hz;
  r.meta_extra["coincidence_hz"] = coinc;
  r.meta_extra["g2_corrected"] = g2c;
  r.meta_extra["g2_zero_delay"] = g0.value;
  r.meta_extra["linear_over_nonlinear"] = lin_over_nl;
}

}  // namespace

RunResult run_scenario(const config::ScenarioConfig& cfg, par::Exec mode,
                       const std::string& out_override) {
  cfg.params.validate();
  const auto t0 = std::chrono::steady_clock::now();

  Runner r{cfg, mode, fs::path(out_override.empty() ? cfg.output_dir : out_override),
           {}, json::object()};
  std::error_code ec;
  fs::create_directories(r.dir, ec);
  if (ec) throw std::runtime_error("io: cannot create " + r.dir.string());

  switch (cfg.scenario) {
    case config::Scenario::G2Curve: run_g2_curve(r); break;
    case config::Scenario::G2Collapse: run_g2_collapse(r); break;
    case config::Scenario::Spectrum: run_spectrum(r); break;
    case config::Scenario::PowerScan: run_power_scan(r); break;
    case config::Scenario::BidirEnsemble: run_bidir_ensemble(r); break;
    case config::Scenario::ExperimentRates: run_experiment_rates(r); break;
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json meta;
  meta["tool"] = "wqed";
  meta["version"] = kVersion;
  meta["scenario"] = config::scenario_name(cfg.scenario);
  meta["config"] = json::object();
  for (const auto& [k, v] : config::snapshot(cfg)) meta["config"][k] = v;
  meta["seeds"] = {{"master_seed", cfg.master_seed},
                   {"realizations", cfg.realizations}};
  meta["tolerances"] = {{"rel_tol", cfg.tolerances.rel_tol},
                        {"abs_tol", cfg.tolerances.abs_tol}};
  meta["wall_time_s"] = wall;
  meta["threads"] = par::max_threads();
  meta["outputs"] = r.result.files;
  for (auto& [k, v] : r.meta_extra.items()) meta[k] = v;

  const fs::path mpath = r.dir / "metadata.json";
  {
    std::ofstream mf(mpath);
    if (!mf) throw std::runtime_error("io: cannot open " + mpath.string());
    mf << meta.dump(2) << "\n";
    mf.close();
    if (!mf) throw std::runtime_error("io: write failed for " + mpath.string());
  }
  r.result.files.push_back(mpath.string());
  return r.result;
}

namespace {

struct Check {
  std::ostream& os;
  bool all_ok = true;
  void operator()(const std::string& name, bool ok, const std::string& detail = "") {
    os << (ok ? "ok   " : "FAIL ") << name;
    if (!ok && !detail.empty()) os << ": " << detail;
    os << "\n";
    all_ok = all_ok && ok;
  }
};

}  // namespace

bool selftest(std::ostream& os, par::Exec mode) {
  Check check{os};
  using std::abs;
  using C = std::complex<double>;

  // printed forms of t and ttilde agree
  {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double k = 20.0 * (rng::uniform01(7, 2 * i) - 0.5);
      const double b = rng::uniform01(7, 2 * i + 1);
      worst = std::max(worst, abs(chiral::transmission_t(k, b) -
                                  chiral::transmission_t_pole(k, b)));
      worst = std::max(worst, abs(chiral::bound_transmission(k, b) -
                                  chiral::bound_transmission_pole(k, b)));
    }
    check("transmission two printed forms agree", worst < 1e-13,
          "worst " + fmt17(worst));
  }

  // unit modulus at beta = 1
  {
    double worst = 0.0;
    for (int i = 1; i <= 100; ++i) {
      worst = std::max(worst, abs(abs(chiral::transmission_t(0.37 * i, 1.0)) - 1.0));
      worst = std::max(worst, abs(abs(chiral::bound_transmission(0.59 * i, 1.0)) - 1.0));
    }
    check("lossless chain has |t| = |ttilde| = 1", worst < 1e-13);
  }

  // incomplete gamma recurrence G_{n+1} = n G_n + z^n e^{-z}
  {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const int n = 1 + static_cast<int>(rng::uniform01(11, 3 * i) * 99);
      const C z(8.0 * (rng::uniform01(11, 3 * i + 1) - 0.3),
                8.0 * (rng::uniform01(11, 3 * i + 2) - 0.5));
      const ScaledComplex lhs = specfun::incomplete_gamma_upper_int_scaled(n, z);
      const ScaledComplex rhs =
          ScaledComplex(static_cast<double>(n)) *
              specfun::incomplete_gamma_upper_int_scaled(n - 1, z) +
          ScaledComplex::pow_int(z, n) * ScaledComplex::exp(-z);
      const double rel = abs((lhs - rhs).to_complex()) /
                         std::max(1e-300, abs(lhs.to_complex()));
      worst = std::max(worst, rel);
    }
    check("incomplete-gamma recurrence", worst < 1e-11, "worst " + fmt17(worst));
  }

  // trivial limits
  {
    SystemParams p;
    p.n_emitters = 7;
    p.beta = 0.0;
    const bool ok = abs(chiral::psi_exact(p, 0.8) - 1.0) < 1e-14 &&
                    abs(observables::g2(p, 0.3).value - 1.0) < 1e-12;
    check("beta -> 0 uncorrelated limit", ok);
  }

  // psi depends on |x| only
  {
    SystemParams p;
    p.n_emitters = 6;
    p.beta = 0.3;
    const bool ok = chiral::psi_exact(p, 1.7) == chiral::psi_exact(p, -1.7);
    check("psi(x) = psi(-x) exactly", ok);
  }

  // closed form vs quadrature oracle on a small grid
  {
    double worst = 0.0;
    for (int n : {1, 2, 5}) {
      for (double b : {0.05, 0.5, 0.9}) {
        SystemParams p;
        p.n_emitters = n;
        p.beta = b;
        for (double x : {0.0, 0.6, 2.3}) {
          const C exact = chiral::psi_exact(p, x);
          const C quadv = oracle::psi_quadrature(p, x).value;
          worst = std::max(worst, abs(exact - quadv) / std::max(1e-12, abs(exact)));
        }
      }
    }
    check("oracle equivalence (small grid)", worst < 1e-6, "worst " + fmt17(worst));
  }

  // mutated chi sign must break oracle equivalence (sensitivity)
  {
    SystemParams p;
    p.n_emitters = 3;
    p.beta = 0.3;
    const C good = chiral::psi_exact(p, 0.5);
    const C mutated = chiral::uncorrelated_amplitude(p) + chiral::phi_exact_x(p, 0.5);
    const C quadv = oracle::psi_quadrature(p, 0.5).value;
    const bool ok = abs(good - quadv) < 1e-8 && abs(mutated - quadv) > 1e-4;
    check("sign mutation detected by oracle", ok);
  }

  // Fourier consistency
  {
    SystemParams p;
    p.n_emitters = 4;
    p.beta = 0.3;
    const auto rep = oracle::fourier_crosscheck(p, 1 << 14, 0.0, mode);
    check("x-space / k-space Fourier consistency",
          rep.grid_resolved && rep.max_rel_dev < 1e-6 && rep.spike_ratio < 10.0,
          "max rel dev " + fmt17(rep.max_rel_dev));
  }

  // bidirectional calibration: beta_l = 0 reduces to the chiral closed form
  {
    double worst_g2 = 0.0, worst_pw = 0.0;
    for (int n : {1, 2, 5}) {
      SystemParams p;
      p.n_emitters = n;
      p.beta = 0.1;
      p.beta_l = 0.0;
      p.drive = 0.02;
      const auto chain = bidir::sample_chain(n, 99 + n);
      std::vector<double> xs{0.0, 0.4, 1.3, 3.7};
      const auto obs = bidir::output_observables(chain, p, xs);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double ref = observables::g2(p, xs[i]).value;
        worst_g2 = std::max(worst_g2, abs(obs.g2[i] - ref) / ref);
      }
      const PowerBreakdown pb = oracle::power_integrals(p);
      worst_pw = std::max(
          worst_pw, abs(obs.power.total() - pb.total()) / pb.total());
    }
    check("calibration: bidirectional beta_l=0 matches chiral g2",
          worst_g2 < 1e-6, "worst " + fmt17(worst_g2));
    check("calibration: bidirectional beta_l=0 matches chiral power",
          worst_pw < 1e-6, "worst " + fmt17(worst_pw));
  }

  // deterministic ensembles, serial == parallel
  {
    SystemParams p;
    p.n_emitters = 4;
    p.beta = 0.05;
    p.beta_l = 0.05;
    p.drive = 0.02;
    std::vector<double> xs{0.0, 1.0, 2.0};
    const auto a = bidir::ensemble_run(p, 8, 321, xs, par::Exec::Serial);
    const auto b = bidir::ensemble_run(p, 8, 321, xs, mode);
    bool same = a.n_realizations == b.n_realizations;
    for (std::size_t i = 0; same && i < xs.size(); ++i)
      same = a.g2_mean[i] == b.g2_mean[i] && a.g2_std[i] == b.g2_std[i];
    check("ensemble deterministic across thread counts", same);
  }

  // Hurwitz tail identity behind the mixed-power asymptote
  {
    const int n = 1000;
    double s = 0.0;
    for (int m = 0; m < n; ++m)
      s += std::pow(static_cast<double>(n + m), -2.5);
    const double ref = (2.0 / 3.0 - 1.0 / (3.0 * std::sqrt(2.0))) *
                       std::pow(static_cast<double>(n), -1.5);
    check("Hurwitz tail identity (1% at N=1000)", abs(s / ref - 1.0) < 0.01,
          fmt17(s / ref));
  }

  // pair fraction limits and symmetry
  {
    const double f0 = asymptotics::pair_fraction(1e-6);
    const double fh = asymptotics::pair_fraction(0.5);
    const bool sym =
        abs(asymptotics::pair_fraction(0.3) - asymptotics::pair_fraction(0.7)) <
        1e-15;
    check("pair fraction limits 0.13 / 0.08 and symmetry",
          abs(f0 - 0.13) < 0.005 && abs(fh - 0.08) < 0.005 && sym,
          fmt17(f0) + " " + fmt17(fh));
  }

  // weak-drive passivity
  {
    bool ok = true;
    for (double b : {0.05, 0.3, 0.6}) {
      SystemParams p;
      p.n_emitters = 12;
      p.beta = b;
      p.drive = 0.1;
      const PowerBreakdown pb = oracle::power_integrals(p);
      ok = ok && pb.total() <= 1.0 + 1e-9;
    }
    check("weak-drive passivity (total <= P_in)", ok);
  }

  return check.all_ok;
}

}  // namespace scenarios
