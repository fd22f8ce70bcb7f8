// Copyright 2026 The catsim Authors
// SPDX-License-Identifier: Apache-2.0

// Scenario runner front end. Talks to the library only through catsim.h.

#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "catsim/catsim.h"

int main(int argc, char** argv) {
  CLI::App app{"Trapped-ion cat-state simulator"};
  app.set_version_flag("--version", std::string(catsim_version()));
  app.require_subcommand(1);

  std::string config;
  std::string output_dir;
  auto* run = app.add_subcommand("run", "Run the scenario described by a config file");
  run->add_option("--config", config, "Scenario config (key = value)")->required();
  run->add_option("--output-dir", output_dir, "Override the config's output_dir");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11 returns 0 for --help/--version; usage errors map to exit 1.
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  const catsim_status status =
      catsim_run_config(config.c_str(), output_dir.empty() ? nullptr : output_dir.c_str());
  if (status != CATSIM_OK) {
    std::fprintf(stderr, "catsim: %s: %s\n", catsim_status_string(status), catsim_last_error());
  }
  return catsim_exit_code(status);
}
