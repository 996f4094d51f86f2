#pragma once

#include "splitconf/csv.hpp"
#include "splitconf/simulation.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace splitconf {

/// Raised for malformed or semantically invalid run configuration
/// (unknown keys, out-of-range values, incompatible method/DGP pairs).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

const std::vector<std::string>& preset_names();
bool is_coverage_preset(const std::string& name);
bool is_width_preset(const std::string& name);

struct PresetOutput {
  std::vector<std::string> csv_paths;
  std::vector<std::string> svg_paths;
};

/// Expands a named experiment grid, runs it, and writes one CSV per
/// experiment (plus an SVG coverage chart for the coverage presets) into
/// out_dir. Throws ConfigError for unknown names and std::runtime_error for
/// unwritable paths.
PresetOutput run_preset(const std::string& name, std::uint64_t seed, int reps,
                        const std::string& out_dir);

/// Rows for a coverage report at one grid point (one row per method).
std::vector<CsvRow> coverage_rows(const std::string& experiment, const CoverageReport& report,
                                  double split_ratio, const std::string& label_suffix = "");

/// Rows for a width report (one row per sample size).
std::vector<CsvRow> width_rows(const std::string& experiment, const WidthReport& report,
                               double split_ratio, const std::string& label_suffix = "");

}  // namespace splitconf
