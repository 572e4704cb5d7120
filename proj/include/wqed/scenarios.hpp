#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wqed/config.hpp"
#include "wqed/parallel.hpp"

namespace wqed::scenarios {

struct RunResult {
  std::vector<std::string> files;  // everything written, metadata last
};

/// Runs one scenario and writes its CSV curves plus metadata.json into the
/// output directory. Throws: std::invalid_argument (config), NumericsError
/// (tolerance), std::runtime_error with "io:" prefix (filesystem).
RunResult run_scenario(const config::ScenarioConfig& cfg,
                       par::Exec mode = par::Exec::Parallel,
                       const std::string& out_override = "");

/// Oracle-equivalence, trivial-limit, and calibration property suite.
/// Prints one ok/FAIL line per property; returns true iff all pass.
bool selftest(std::ostream& os, par::Exec mode = par::Exec::Parallel);

}  // namespace wqed::scenarios
