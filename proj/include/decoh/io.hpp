#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "decoh/common.hpp"

namespace decoh {

// %.16e: 17 significant digits, lossless round-trip of any double.
std::string fmt_sci(double v);

void ensure_dir(const std::string& dir);
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// 64-bit FNV-1a; hex form used as the run identifier in manifests.
std::uint64_t fnv1a(std::string_view data);
std::string fnv1a_hex(std::string_view data);

// Outcome of one named invariant or acceptance check within a command.
struct CheckResult {
    std::string name;
    bool pass = false;
};

// Writes <out_dir>/manifest.json with the command name, the hash and full
// resolved configuration, per-check outcomes, wall-clock timings and the
// emitted files. The timings make the manifest the single output file that
// is not byte-reproducible.
void write_manifest(const std::string& out_dir, const std::string& command,
                    const std::string& canonical_config, const std::vector<CheckResult>& checks,
                    const std::vector<std::pair<std::string, double>>& timings_s,
                    const std::vector<std::string>& outputs);

// Gnuplot scripts for whichever known CSVs appear in csv_names (base names,
// written next to them in out_dir). Scripts only restyle emitted columns;
// they never derive data.
void emit_plot_scripts(const std::string& out_dir, const std::vector<std::string>& csv_names);

}  // namespace decoh
