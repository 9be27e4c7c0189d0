#pragma once

#include <string>

#include "decoh/config.hpp"

namespace decoh {

// Command entry points, callable in process (the CLI and the tests share
// them). Each writes its CSVs plus manifest.json into out_dir and returns the
// process exit code: 0 on success, 3 when a recorded invariant check failed.
// Configuration and numerical failures propagate as exceptions.
int cmd_amplitudes(const RunConfig& cfg, const std::string& out_dir, bool emit_plots);
int cmd_kernel(const RunConfig& cfg, const std::string& out_dir, bool emit_plots);
int cmd_evolve(const RunConfig& cfg, const std::string& out_dir, bool emit_plots);
int cmd_scenario(const RunConfig& cfg, const std::string& out_dir, bool emit_plots);
int cmd_validate(const RunConfig& cfg, const std::string& out_dir, bool emit_plots);

// Full CLI: parses arguments, loads the config, applies flag overrides,
// dispatches, and maps exceptions to exit codes (2 config, 3 invariant,
// 4 numerical).
int run_cli(int argc, char** argv);

}  // namespace decoh
