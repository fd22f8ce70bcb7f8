// Copyright 2026 The catsim Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Config-driven scenario runner. Config files are flat `key = value` text
// with dotted keys; `#` starts a comment.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "catsim/dynamics.hpp"
#include "catsim/wigner.hpp"

namespace catsim {

enum class Scenario { validate_transform, evolve_regime, evolve_full, cat_protocol, wigner };

const char* to_string(Scenario s);

struct SweepAxis {
  std::string field;  // one of nu, omega, omega0, g, eta
  std::vector<double> values;
};

enum class BranchRequest { plus, minus, both };

struct ScenarioConfig {
  Scenario scenario = Scenario::validate_transform;
  SystemParams params;
  TruncationScheme trunc;
  double t_max = 2.0 * 3.14159265358979323846;
  std::size_t n_steps = 64;
  std::vector<SweepAxis> sweep;
  std::filesystem::path output_dir = ".";
  std::optional<PhaseGrid> wigner;
  BranchRequest branch = BranchRequest::both;
  RegimeThresholds thresholds;

  /// Throws Error(config) for any field outside its type's invariants, or a
  /// requested odd cat that is degenerate.
  void validate() const;
};

/// Parses config text. Throws Error(config) with the offending line on error.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Sets a SystemParams field by name; throws Error(config) for unknown names.
void set_param(SystemParams& p, const std::string& field, double value);

struct RunResult {
  int exit_code = 0;  // 0 ok, 1 config/validation, 2 numerical tolerance
  std::string message;
  std::vector<std::filesystem::path> files;
};

/// Runs the scenario (all sweep points) and writes its files plus summary.txt.
/// Sweep points run on `threads` workers (1 = sequential).
RunResult run_scenario(const ScenarioConfig& cfg, unsigned threads = 1);

/// Locale-independent decimal formatting, 12 significant digits.
std::string format_number(double v);

}  // namespace catsim
