#include "splitconf/presets.hpp"

#include "splitconf/svg.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

namespace splitconf {

namespace {

int inference_rows(int n_total, double ratio) {
  return n_total - static_cast<int>(std::lround(ratio * n_total));
}

std::vector<MethodSpec> fig1_methods(double alpha) {
  return {make_universal(alpha, 1.0), make_universal(alpha, 0.1), make_studentized(alpha),
          make_bias_corrected(alpha)};
}

struct CoverageGrid {
  std::string x_label;  // "N" or "d"
  std::vector<CoverageConfig> configs;
  std::vector<double> xs;
};

CoverageGrid fig1_grid(DgpKind kind, bool vary_n, std::uint64_t seed, int reps) {
  const double alpha = 0.05;
  CoverageGrid grid;
  if (vary_n) {
    grid.x_label = "N";
    for (int n : {10, 20, 50, 100, 200, 500, 1000, 2000, 5000}) {
      CoverageConfig c;
      c.dgp = DgpSpec{kind, n, 5};
      c.methods = fig1_methods(alpha);
      c.reps = reps;
      c.seed = seed;
      grid.configs.push_back(c);
      grid.xs.push_back(n);
    }
  } else {
    grid.x_label = "d";
    for (int d : {2, 5, 10, 25, 50, 100, 150, 200, 250}) {
      CoverageConfig c;
      c.dgp = DgpSpec{kind, 500, d};
      c.methods = fig1_methods(alpha);
      c.reps = reps;
      c.seed = seed;
      grid.configs.push_back(c);
      grid.xs.push_back(d);
    }
  }
  return grid;
}

CoverageGrid manski_grid(std::uint64_t seed, int reps) {
  CoverageGrid grid;
  grid.x_label = "N";
  for (int n : {200, 1000}) {
    CoverageConfig c;
    c.dgp = DgpSpec{DgpKind::Manski2D, n, 2};
    c.methods = {make_empirical_bernstein(0.05, 2.0), make_empirical_bernstein(0.1, 2.0)};
    c.reps = reps;
    c.seed = seed;
    grid.configs.push_back(c);
    grid.xs.push_back(n);
  }
  return grid;
}

std::string run_coverage_experiment(const std::string& name, const CoverageGrid& grid,
                                    const std::string& out_dir, bool log_x,
                                    std::vector<std::string>* svg_paths) {
  std::vector<CsvRow> rows;
  std::vector<CoverageReport> reports;
  reports.reserve(grid.configs.size());
  for (const CoverageConfig& config : grid.configs) {
    reports.push_back(run_coverage(config));
    auto cell_rows = coverage_rows(name, reports.back(), config.split_ratio);
    rows.insert(rows.end(), cell_rows.begin(), cell_rows.end());
  }

  const std::string csv_path = (std::filesystem::path(out_dir) / (name + ".csv")).string();
  write_csv(csv_path, rows);

  // Coverage chart: one polyline per method cell, reference lines per level.
  SvgChart chart;
  chart.title = name;
  chart.x_label = grid.x_label;
  chart.log_x = log_x;
  const auto n_methods = grid.configs.front().methods.size();
  const bool multi_alpha = [&] {
    std::set<double> alphas;
    for (const MethodSpec& m : grid.configs.front().methods) alphas.insert(m.alpha);
    return alphas.size() > 1;
  }();
  for (std::size_t m = 0; m < n_methods; ++m) {
    SvgSeries series;
    const MethodSpec& spec = grid.configs.front().methods[m];
    series.name = spec.label();
    if (multi_alpha) {
      series.name += " alpha=" + std::to_string(spec.alpha).substr(0, 4);
    }
    for (std::size_t i = 0; i < reports.size(); ++i) {
      series.points.emplace_back(grid.xs[i], reports[i].cells[m].coverage());
    }
    chart.series.push_back(std::move(series));
  }
  std::set<double> alphas;
  for (const MethodSpec& m : grid.configs.front().methods) alphas.insert(m.alpha);
  for (double a : alphas) {
    char label[48];
    std::snprintf(label, sizeof(label), "1-alpha=%g", 1.0 - a);
    chart.dashed_refs.emplace_back(label, 1.0 - a);
    double floor = normal_cdf(std::sqrt(2.0 * std::log(1.0 / a)));
    std::snprintf(label, sizeof(label), "UI floor=%.4f", floor);
    chart.dashdot_refs.emplace_back(label, floor);
  }
  chart.y_min = 0.0;
  chart.y_max = 1.0;
  const std::string svg_path = (std::filesystem::path(out_dir) / (name + ".svg")).string();
  write_svg(svg_path, chart);
  if (svg_paths) svg_paths->push_back(svg_path);
  return csv_path;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "fig1-left",     "fig1-right",       "laplace-left",   "laplace-right",
      "mean-scaling",  "quantile-scaling", "manski-coverage"};
  return names;
}

bool is_coverage_preset(const std::string& name) {
  return name == "fig1-left" || name == "fig1-right" || name == "laplace-left" ||
         name == "laplace-right" || name == "manski-coverage";
}

bool is_width_preset(const std::string& name) {
  return name == "mean-scaling" || name == "quantile-scaling";
}

std::vector<CsvRow> coverage_rows(const std::string& experiment, const CoverageReport& report,
                                  double split_ratio, const std::string& label_suffix) {
  std::vector<CsvRow> rows;
  for (const MethodCoverage& cell : report.cells) {
    CsvRow row;
    row.experiment = experiment;
    row.method = method_kind_name(cell.method.kind);
    row.label = cell.method.label() + label_suffix;
    row.n_total = report.dgp.n_total;
    row.n_inference = inference_rows(report.dgp.n_total, split_ratio);
    row.dim = report.dgp.dim;
    row.alpha = cell.method.alpha;
    row.reps = cell.reps;
    row.seed = report.seed;
    row.coverage = cell.coverage();
    row.mc_stderr = cell.mc_stderr();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<CsvRow> width_rows(const std::string& experiment, const WidthReport& report,
                               double split_ratio, const std::string& label_suffix) {
  std::vector<CsvRow> rows;
  for (const WidthCell& cell : report.cells) {
    CsvRow row;
    row.experiment = experiment;
    row.method = method_kind_name(report.method.kind);
    row.label = report.method.label() + label_suffix;
    row.n_total = cell.n_total;
    row.n_inference = inference_rows(cell.n_total, split_ratio);
    row.dim = report.dgp.dim;
    row.alpha = report.method.alpha;
    row.reps = cell.reps;
    row.seed = report.seed;
    row.median_width = cell.median_width;
    rows.push_back(std::move(row));
  }
  return rows;
}

PresetOutput run_preset(const std::string& name, std::uint64_t seed, int reps,
                        const std::string& out_dir) {
  if (!std::filesystem::is_directory(out_dir)) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("run_preset: cannot create output directory " + out_dir);
  }

  PresetOutput out;
  if (name == "fig1-left") {
    out.csv_paths.push_back(run_coverage_experiment(
        name, fig1_grid(DgpKind::LinearGaussian, true, seed, reps), out_dir, true, &out.svg_paths));
  } else if (name == "fig1-right") {
    out.csv_paths.push_back(run_coverage_experiment(
        name, fig1_grid(DgpKind::LinearGaussian, false, seed, reps), out_dir, false,
        &out.svg_paths));
  } else if (name == "laplace-left") {
    out.csv_paths.push_back(run_coverage_experiment(
        name, fig1_grid(DgpKind::LinearLaplace, true, seed, reps), out_dir, true, &out.svg_paths));
  } else if (name == "laplace-right") {
    out.csv_paths.push_back(run_coverage_experiment(
        name, fig1_grid(DgpKind::LinearLaplace, false, seed, reps), out_dir, false,
        &out.svg_paths));
  } else if (name == "manski-coverage") {
    out.csv_paths.push_back(run_coverage_experiment(name, manski_grid(seed, reps), out_dir, true,
                                                    &out.svg_paths));
  } else if (name == "mean-scaling") {
    WidthConfig config;
    config.dgp = DgpSpec{DgpKind::HDMean, 0, 1};
    config.method = make_studentized(0.05);
    config.n_values = {1000, 4000, 16000};
    config.reps = reps;
    config.seed = seed;
    WidthReport report = run_width(config);
    const std::string csv_path = (std::filesystem::path(out_dir) / (name + ".csv")).string();
    write_csv(csv_path, width_rows(name, report, config.split_ratio));
    out.csv_paths.push_back(csv_path);
  } else if (name == "quantile-scaling") {
    std::vector<CsvRow> rows;
    std::uint64_t beta_seed = seed;
    for (double beta : {1.0, 2.0}) {
      WidthConfig config;
      config.dgp = DgpSpec{DgpKind::QuantileHolder, 0, 1};
      config.dgp.beta = beta;
      config.dgp.gamma = 0.5;
      config.method = make_studentized(0.05);
      config.n_values = {500, 2000, 8000};
      config.reps = reps;
      config.seed = beta_seed++;
      WidthReport report = run_width(config);
      char suffix[32];
      std::snprintf(suffix, sizeof(suffix), "-beta=%g", beta);
      auto beta_rows = width_rows(name, report, config.split_ratio, suffix);
      rows.insert(rows.end(), beta_rows.begin(), beta_rows.end());
    }
    const std::string csv_path = (std::filesystem::path(out_dir) / (name + ".csv")).string();
    write_csv(csv_path, rows);
    out.csv_paths.push_back(csv_path);
  } else {
    std::string msg = "unknown preset '" + name + "'; available:";
    for (const std::string& p : preset_names()) msg += " " + p;
    throw ConfigError(msg);
  }
  return out;
}

}  // namespace splitconf
