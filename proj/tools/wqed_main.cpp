#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wqed/config.hpp"
#include "wqed/errors.hpp"
#include "wqed/parallel.hpp"
#include "wqed/scenarios.hpp"
#include "wqed/version.hpp"

int main(int argc, char** argv) {
  CLI::App app{"wqed: photon transport through lossy chiral emitter chains"};
  app.set_version_flag("--version", wqed::kVersion);

  std::string config_path;
  std::string out_dir;
  int threads = 0;
  long long seed_override = -1;
  bool do_selftest = false;
  bool serial = false;

  app.add_option("--config", config_path, "scenario config file (key = value)");
  app.add_option("--out", out_dir, "output directory (overrides config)");
  app.add_option("--threads", threads, "worker threads, 0 = auto")
      ->check(CLI::Range(0, 4096));
  app.add_option("--seed", seed_override, "override the master seed");
  app.add_flag("--selftest", do_selftest,
               "run the oracle-equivalence and invariant suite");
  app.add_flag("--serial", serial, "use the serial reference kernels");

  CLI11_PARSE(app, argc, argv);

  wqed::par::set_threads(threads);
  const wqed::par::Exec mode =
      (serial || threads == 1) ? wqed::par::Exec::Serial : wqed::par::Exec::Parallel;

  if (do_selftest) {
    const bool ok = wqed::scenarios::selftest(std::cout, mode);
    std::cout << (ok ? "selftest: all properties pass\n"
                     : "selftest: FAILURES present\n");
    return ok ? 0 : 1;
  }

  if (config_path.empty()) {
    std::cerr << "error: --config or --selftest required (see --help)\n";
    return 2;
  }

  try {
    wqed::config::ScenarioConfig cfg = wqed::config::load_config(config_path);
    if (seed_override >= 0)
      cfg.master_seed = static_cast<std::uint64_t>(seed_override);
    const auto result = wqed::scenarios::run_scenario(cfg, mode, out_dir);
    for (const auto& f : result.files) std::cout << "wrote " << f << "\n";
    return 0;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const wqed::NumericsError& e) {
    std::cerr << "numerical tolerance failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    const std::string what = e.what();
    std::cerr << "error: " << what << "\n";
    return what.rfind("io:", 0) == 0 ? 4 : 3;
  }
}
