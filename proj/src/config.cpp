#include "wqed/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wqed::config {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct Parser {
  ScenarioConfig cfg;
  std::vector<std::string> errors;

  void fail(int line, const std::string& msg) {
    errors.push_back("line " + std::to_string(line) + ": " + msg);
  }

  bool to_double(const std::string& v, double& out) {
    try {
      std::size_t pos = 0;
      out = std::stod(v, &pos);
      return pos == v.size();
    } catch (...) {
      return false;
    }
  }
  bool to_int(const std::string& v, long long& out) {
    try {
      std::size_t pos = 0;
      out = std::stoll(v, &pos);
      return pos == v.size();
    } catch (...) {
      return false;
    }
  }

  void set_double(int line, const std::string& key, const std::string& v,
                  double& dst, double lo, double hi) {
    double d;
    if (!to_double(v, d)) {
      fail(line, "value for '" + key + "' is not a number: '" + v + "'");
      return;
    }
    if (d < lo || d > hi) {
      std::ostringstream os;
      os << "'" << key << "' = " << d << " out of range [" << lo << ", " << hi << "]";
      fail(line, os.str());
      return;
    }
    dst = d;
  }

  void set_int(int line, const std::string& key, const std::string& v, int& dst,
               long long lo, long long hi) {
    long long d;
    if (!to_int(v, d)) {
      fail(line, "value for '" + key + "' is not an integer: '" + v + "'");
      return;
    }
    if (d < lo || d > hi) {
      std::ostringstream os;
      os << "'" << key << "' = " << d << " out of range [" << lo << ", " << hi << "]";
      fail(line, os.str());
      return;
    }
    dst = static_cast<int>(d);
  }

  void parse_collapse_pairs(int line, const std::string& v) {
    // comma-separated beta:N entries, e.g. "0.05:66, 0.1:31, 0.19:14"
    cfg.collapse_pairs.clear();
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      const auto colon = item.find(':');
      double b;
      long long n;
      if (colon == std::string::npos || !to_double(trim(item.substr(0, colon)), b) ||
          !to_int(trim(item.substr(colon + 1)), n) || b <= 0.0 || b >= 1.0 || n < 1) {
        fail(line, "bad collapse pair '" + item + "' (expect beta:N)");
        return;
      }
      cfg.collapse_pairs.emplace_back(b, static_cast<int>(n));
    }
    if (cfg.collapse_pairs.empty()) fail(line, "collapse_pairs is empty");
  }

  void handle(int line, const std::string& section, const std::string& key,
              const std::string& value) {
    const std::string full = section.empty() ? key : section + "." + key;
    if (full == "scenario.name") {
      if (value == "g2-curve")
        cfg.scenario = Scenario::G2Curve;
      else if (value == "g2-collapse")
        cfg.scenario = Scenario::G2Collapse;
      else if (value == "spectrum")
        cfg.scenario = Scenario::Spectrum;
      else if (value == "power-scan")
        cfg.scenario = Scenario::PowerScan;
      else if (value == "bidir-ensemble")
        cfg.scenario = Scenario::BidirEnsemble;
      else if (value == "experiment-rates")
        cfg.scenario = Scenario::ExperimentRates;
      else
        fail(line, "unknown scenario '" + value + "'");
    } else if (full == "params.n") {
      set_int(line, key, value, cfg.params.n_emitters, 1, 100000);
    } else if (full == "params.beta") {
      set_double(line, key, value, cfg.params.beta, 0.0, 1.0);
    } else if (full == "params.beta_l") {
      set_double(line, key, value, cfg.params.beta_l, 0.0, 1.0);
    } else if (full == "params.k0") {
      set_double(line, key, value, cfg.params.k0, -1e6, 1e6);
    } else if (full == "params.drive") {
      set_double(line, key, value, cfg.params.drive, 0.0, 10.0);
    } else if (full == "units.gamma_tot_over_2pi_hz") {
      set_double(line, key, value, cfg.params.gamma_tot_hz, 0.0, 1e18);
    } else if (full == "grids.x_max") {
      set_double(line, key, value, cfg.x_max, 1e-6, 1e6);
    } else if (full == "grids.x_points") {
      set_int(line, key, value, cfg.x_points, 2, 1000000);
    } else if (full == "grids.k_max") {
      set_double(line, key, value, cfg.k_max, 0.0, 1e6);
    } else if (full == "grids.k_points") {
      set_int(line, key, value, cfg.k_points, 2, 1000000);
    } else if (full == "grids.n_min") {
      set_int(line, key, value, cfg.n_min, 1, 1000000);
    } else if (full == "grids.n_max") {
      set_int(line, key, value, cfg.n_max, 1, 1000000);
    } else if (full == "grids.n_points") {
      set_int(line, key, value, cfg.n_points, 2, 100000);
    } else if (full == "grids.collapse_pairs") {
      parse_collapse_pairs(line, value);
    } else if (full == "tolerances.rel_tol") {
      set_double(line, key, value, cfg.tolerances.rel_tol, 1e-15, 1.0);
    } else if (full == "tolerances.abs_tol") {
      set_double(line, key, value, cfg.tolerances.abs_tol, 0.0, 1.0);
    } else if (full == "tolerances.max_subdivisions") {
      set_int(line, key, value, cfg.tolerances.max_subdivisions, 16, 10000000);
    } else if (full == "tolerances.tail_cutoff_delta") {
      set_double(line, key, value, cfg.tolerances.tail_cutoff_delta, 0.0, 1e9);
    } else if (full == "seeds.master_seed") {
      long long s;
      if (!to_int(value, s) || s < 0)
        fail(line, "master_seed must be a nonnegative integer");
      else
        cfg.master_seed = static_cast<std::uint64_t>(s);
    } else if (full == "seeds.realizations") {
      set_int(line, key, value, cfg.realizations, 1, 1000000);
    } else if (full == "output.directory") {
      cfg.output_dir = value;
    } else {
      fail(line, "unknown key '" + full + "'");
    }
  }
};

}  // namespace

std::string scenario_name(Scenario s) {
  switch (s) {
    case Scenario::G2Curve: return "g2-curve";
    case Scenario::G2Collapse: return "g2-collapse";
    case Scenario::Spectrum: return "spectrum";
    case Scenario::PowerScan: return "power-scan";
    case Scenario::BidirEnsemble: return "bidir-ensemble";
    case Scenario::ExperimentRates: return "experiment-rates";
  }
  return "?";
}

ScenarioConfig parse_config(const std::string& text) {
  Parser p;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = raw;
    const auto hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') {
        p.fail(line, "malformed section header '" + s + "'");
        continue;
      }
      section = trim(s.substr(1, s.size() - 2));
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      p.fail(line, "expected 'key = value', got '" + s + "'");
      continue;
    }
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty() || value.empty()) {
      p.fail(line, "empty key or value");
      continue;
    }
    p.handle(line, section, key, value);
  }

  // cross-field validation
  if (p.cfg.params.beta + p.cfg.params.beta_l > 1.0)
    p.errors.push_back("beta + beta_l exceeds 1");
  if (p.cfg.n_min > p.cfg.n_max) p.errors.push_back("n_min > n_max");
  if (p.cfg.scenario == Scenario::ExperimentRates &&
      p.cfg.params.gamma_tot_hz <= 0.0)
    p.errors.push_back(
        "experiment-rates needs units.gamma_tot_over_2pi_hz > 0");
  if (p.cfg.scenario == Scenario::G2Collapse && p.cfg.collapse_pairs.empty()) {
    // Fig. 2(b)-style default: three pairs at matched optical depth ~1e-6.
    p.cfg.collapse_pairs = {{0.05, 66}, {0.1, 31}, {0.19, 14}};
  }

  if (!p.errors.empty()) {
    std::string all = "config errors:";
    for (const auto& e : p.errors) all += "\n  " + e;
    throw std::invalid_argument(all);
  }
  return p.cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

std::map<std::string, std::string> snapshot(const ScenarioConfig& c) {
  auto fmt = [](double v) {
    char buf[40];
    snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  std::map<std::string, std::string> m;
  m["scenario.name"] = scenario_name(c.scenario);
  m["params.n"] = std::to_string(c.params.n_emitters);
  m["params.beta"] = fmt(c.params.beta);
  m["params.beta_l"] = fmt(c.params.beta_l);
  m["params.k0"] = fmt(c.params.k0);
  m["params.drive"] = fmt(c.params.drive);
  m["units.gamma_tot_over_2pi_hz"] = fmt(c.params.gamma_tot_hz);
  m["grids.x_max"] = fmt(c.x_max);
  m["grids.x_points"] = std::to_string(c.x_points);
  m["grids.k_max"] = fmt(c.k_max);
  m["grids.k_points"] = std::to_string(c.k_points);
  m["grids.n_min"] = std::to_string(c.n_min);
  m["grids.n_max"] = std::to_string(c.n_max);
  m["grids.n_points"] = std::to_string(c.n_points);
  {
    std::string s;
    for (const auto& [b, n] : c.collapse_pairs) {
      if (!s.empty()) s += ",";
      s += fmt(b) + ":" + std::to_string(n);
    }
    m["grids.collapse_pairs"] = s;
  }
  m["tolerances.rel_tol"] = fmt(c.tolerances.rel_tol);
  m["tolerances.abs_tol"] = fmt(c.tolerances.abs_tol);
  m["tolerances.max_subdivisions"] = std::to_string(c.tolerances.max_subdivisions);
  m["tolerances.tail_cutoff_delta"] = fmt(c.tolerances.tail_cutoff_delta);
  m["seeds.master_seed"] = std::to_string(c.master_seed);
  m["seeds.realizations"] = std::to_string(c.realizations);
  m["output.directory"] = c.output_dir;
  return m;
}

}  // namespace wqed::config
