// Copyright 2026 The catsim Authors
// SPDX-License-Identifier: Apache-2.0

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "catsim/error.hpp"
#include "catsim/scenario.hpp"

namespace catsim {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void config_error(std::size_t line, const std::string& what) {
  fail(ErrorCode::config, "config line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& s, std::size_t line) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    config_error(line, "expected a finite number, got '" + s + "'");
  }
  return v;
}

std::size_t parse_count(const std::string& s, std::size_t line) {
  std::size_t v = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end) config_error(line, "expected a count, got '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::string& s, std::size_t line) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), line));
  if (out.empty()) config_error(line, "empty sweep list");
  return out;
}

Scenario parse_scenario(const std::string& s, std::size_t line) {
  static const std::map<std::string, Scenario> names = {
      {"validate-transform", Scenario::validate_transform},
      {"evolve-regime", Scenario::evolve_regime},
      {"evolve-full", Scenario::evolve_full},
      {"cat-protocol", Scenario::cat_protocol},
      {"wigner", Scenario::wigner},
  };
  const auto it = names.find(s);
  if (it == names.end()) config_error(line, "unknown scenario '" + s + "'");
  return it->second;
}

BranchRequest parse_branch(const std::string& s, std::size_t line) {
  if (s == "plus" || s == "+") return BranchRequest::plus;
  if (s == "minus" || s == "-") return BranchRequest::minus;
  if (s == "both") return BranchRequest::both;
  config_error(line, "cat.branch must be plus, minus or both");
}

bool is_param_field(const std::string& f) {
  return f == "nu" || f == "omega" || f == "omega0" || f == "g" || f == "eta";
}

}  // namespace

const char* to_string(Scenario s) {
  switch (s) {
    case Scenario::validate_transform: return "validate-transform";
    case Scenario::evolve_regime: return "evolve-regime";
    case Scenario::evolve_full: return "evolve-full";
    case Scenario::cat_protocol: return "cat-protocol";
    case Scenario::wigner: return "wigner";
  }
  return "unknown";
}

void set_param(SystemParams& p, const std::string& field, double value) {
  if (field == "nu") p.nu = value;
  else if (field == "omega") p.omega = value;
  else if (field == "omega0") p.omega0 = value;
  else if (field == "g") p.g = value;
  else if (field == "eta") p.eta = value;
  else fail(ErrorCode::config, "unknown parameter field '" + field + "'");
}

ScenarioConfig parse_config(const std::string& text) {
  ScenarioConfig cfg;
  std::set<std::string> seen;
  bool have_scenario = false;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) config_error(line, "expected 'key = value'");
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (key.empty() || value.empty()) config_error(line, "empty key or value");
    if (!seen.insert(key).second) config_error(line, "duplicate key '" + key + "'");

    if (key == "scenario") {
      cfg.scenario = parse_scenario(value, line);
      have_scenario = true;
    } else if (key.starts_with("params.")) {
      const std::string field = key.substr(7);
      if (!is_param_field(field)) config_error(line, "unknown parameter '" + field + "'");
      set_param(cfg.params, field, parse_double(value, line));
    } else if (key == "trunc.n_vib") {
      cfg.trunc.n_vib = parse_count(value, line);
    } else if (key == "trunc.n_cav") {
      cfg.trunc.n_cav = parse_count(value, line);
    } else if (key == "trunc.guard") {
      cfg.trunc.guard = parse_count(value, line);
    } else if (key == "time.t_max") {
      cfg.t_max = parse_double(value, line);
    } else if (key == "time.n_steps") {
      cfg.n_steps = parse_count(value, line);
    } else if (key.starts_with("sweep.")) {
      const std::string field = key.substr(6);
      if (!is_param_field(field)) config_error(line, "sweep field '" + field + "' is not a parameter");
      cfg.sweep.push_back({field, parse_list(value, line)});
    } else if (key == "output_dir") {
      cfg.output_dir = value;
    } else if (key == "wigner.half_width") {
      if (!cfg.wigner) cfg.wigner = PhaseGrid{};
      cfg.wigner->half_width = parse_double(value, line);
    } else if (key == "wigner.points") {
      if (!cfg.wigner) cfg.wigner = PhaseGrid{};
      cfg.wigner->points = parse_count(value, line);
    } else if (key == "cat.branch") {
      cfg.branch = parse_branch(value, line);
    } else if (key == "thresholds.ratio_drive") {
      cfg.thresholds.ratio_drive = parse_double(value, line);
    } else if (key == "thresholds.eta_ld") {
      cfg.thresholds.eta_ld = parse_double(value, line);
    } else {
      config_error(line, "unknown key '" + key + "'");
    }
  }
  if (!have_scenario) fail(ErrorCode::config, "config: missing 'scenario'");
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::config, "cannot read config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void ScenarioConfig::validate() const {
  try {
    trunc.validate();
    params.validate();
    if (!std::isfinite(t_max) || t_max < 0.0) fail(ErrorCode::config, "time.t_max must be >= 0");
    if (n_steps == 0) fail(ErrorCode::config, "time.n_steps must be >= 1");
    if (wigner) wigner->validate();
    if (thresholds.ratio_drive <= 0.0 || thresholds.eta_ld < 0.0) {
      fail(ErrorCode::config, "thresholds must be positive");
    }

    std::vector<double> etas{params.eta};
    for (const auto& axis : sweep) {
      if (!is_param_field(axis.field)) fail(ErrorCode::config, "sweep field '" + axis.field + "' unknown");
      if (axis.values.empty()) fail(ErrorCode::config, "sweep '" + axis.field + "' has no values");
      for (const double v : axis.values) {
        SystemParams p = params;
        set_param(p, axis.field, v);
        p.validate();
      }
      if (axis.field == "eta") etas = axis.values;
    }

    const bool odd_cat = branch != BranchRequest::plus &&
                         (scenario == Scenario::cat_protocol || scenario == Scenario::wigner);
    if (odd_cat) {
      for (const double eta : etas) {
        if (eta == 0.0) {
          fail(ErrorCode::degenerate,
               "degenerate cat: the odd branch (|b> - |-b>) vanishes at eta = 0 (beta = 0)");
        }
      }
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::config) throw;
    fail(ErrorCode::config, e.what());
  }
}

}  // namespace catsim
