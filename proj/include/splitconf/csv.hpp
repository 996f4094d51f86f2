#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace splitconf {

/// One output cell. Reals print with 17 significant digits, '.' decimal
/// separator; files are UTF-8 with LF line endings. Fields not measured by
/// the run (median_width on coverage runs, coverage on width runs) stay
/// empty.
struct CsvRow {
  std::string experiment;
  std::string method;  // canonical construction name
  std::string label;   // kind-specific label, e.g. "UI-sigma=1.0"
  int n_total = 0;     // N
  int n_inference = 0; // n = |D2|
  int dim = 0;         // d
  double alpha = 0.0;
  int reps = 0;
  std::uint64_t seed = 0;
  std::optional<double> coverage;
  std::optional<double> mc_stderr;
  std::optional<double> median_width;
};

std::string csv_header();
std::string format_csv_row(const CsvRow& row);

/// Writes header + rows; throws std::runtime_error when the path cannot be
/// opened.
void write_csv(const std::string& path, const std::vector<CsvRow>& rows);

}  // namespace splitconf
