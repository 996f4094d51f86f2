#pragma once

#include "splitconf/presets.hpp"
#include "splitconf/simulation.hpp"

#include <string>
#include <vector>

namespace splitconf {

/// Parsed flat key=value run description.
struct RunConfig {
  enum class Task { Coverage, Width };
  Task task = Task::Coverage;
  DgpSpec dgp;
  std::vector<int> n_values;  // one entry for coverage, the grid for width
  std::vector<MethodSpec> methods;
  int reps = 1000;
  std::uint64_t seed = 0;
  double ratio = 0.5;
  int grid_points = 129;
};

/// Parses the documented flat format (dgp=..., n=..., d=..., methods=...,
/// alpha=..., reps=..., seed=..., ratio=..., plus per-DGP keys task, beta,
/// gamma, b0, cov_diag, manski_angle). Unknown keys and malformed values
/// raise ConfigError naming the line; semantic problems (alpha out of range,
/// incompatible method/DGP) are also raised here, before any computation.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Executes the run and writes <experiment>.csv into out_dir; returns the
/// CSV path.
std::string run_custom(const RunConfig& config, const std::string& out_dir,
                       const std::string& experiment);

}  // namespace splitconf
