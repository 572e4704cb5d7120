#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wqed/params.hpp"
#include "wqed/quadrature.hpp"

namespace wqed::config {

enum class Scenario {
  G2Curve,
  G2Collapse,
  Spectrum,
  PowerScan,
  BidirEnsemble,
  ExperimentRates,
};

std::string scenario_name(Scenario s);

struct ScenarioConfig {
  Scenario scenario = Scenario::G2Curve;
  SystemParams params;

  // grids
  double x_max = 20.0;
  int x_points = 401;
  double k_max = 0.0;  // 0 = auto from xi
  int k_points = 401;
  int n_min = 1;
  int n_max = 1000;
  int n_points = 40;
  std::vector<std::pair<double, int>> collapse_pairs;  // (beta, N)

  quad::QuadratureSpec tolerances{1e-10, 1e-8, 4000, 0.0};

  std::uint64_t master_seed = 12345;
  int realizations = 100;

  std::string output_dir = "out";
};

/// Parses the line-oriented `key = value` format with [section] headers.
/// Collects every problem (unknown key, bad type, out-of-range value) with
/// its line number and throws a single std::invalid_argument listing them.
ScenarioConfig parse_config(const std::string& text);

/// Reads and parses a config file (throws std::runtime_error on I/O failure).
ScenarioConfig load_config(const std::string& path);

/// Round-trippable snapshot of every setting, for the metadata record.
std::map<std::string, std::string> snapshot(const ScenarioConfig& c);

}  // namespace wqed::config
