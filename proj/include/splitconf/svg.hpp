#pragma once

#include <string>
#include <utility>
#include <vector>

namespace splitconf {

struct SvgSeries {
  std::string name;
  std::vector<std::pair<double, double>> points;  // (x, y)
};

/// Minimal deterministic line chart: one polyline per series, optional
/// horizontal reference lines (dashed and dash-dotted), log or linear x.
struct SvgChart {
  std::string title;
  std::string x_label;
  std::string y_label = "coverage";
  bool log_x = false;
  double y_min = 0.0;
  double y_max = 1.0;
  std::vector<SvgSeries> series;
  std::vector<std::pair<std::string, double>> dashed_refs;
  std::vector<std::pair<std::string, double>> dashdot_refs;
};

std::string render_svg(const SvgChart& chart);

void write_svg(const std::string& path, const SvgChart& chart);

}  // namespace splitconf
