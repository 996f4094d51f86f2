#include "splitconf/runconfig.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace splitconf {

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r");
  auto end = s.find_last_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  return s.substr(begin, end - begin + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ConfigError("config error at line " + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& v, int line, const std::string& key) {
  try {
    std::size_t used = 0;
    double out = std::stod(v, &used);
    if (used != v.size()) fail(line, "malformed number for key '" + key + "'");
    return out;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(line, "malformed number for key '" + key + "'");
  }
}

long parse_long(const std::string& v, int line, const std::string& key) {
  try {
    std::size_t used = 0;
    long out = std::stol(v, &used);
    if (used != v.size()) fail(line, "malformed integer for key '" + key + "'");
    return out;
  } catch (const ConfigError&) {
    throw;
  } catch (...) {
    fail(line, "malformed integer for key '" + key + "'");
  }
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> parts;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

DgpKind parse_dgp_kind(const std::string& v, int line) {
  const std::string k = lower(v);
  if (k == "lineargaussian") return DgpKind::LinearGaussian;
  if (k == "linearlaplace") return DgpKind::LinearLaplace;
  if (k == "hdmean") return DgpKind::HDMean;
  if (k == "manski2d") return DgpKind::Manski2D;
  if (k == "quantileholder") return DgpKind::QuantileHolder;
  fail(line, "unknown dgp '" + v + "'");
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig config;
  double alpha = 0.05;
  std::optional<double> default_b0;
  std::vector<std::pair<std::string, int>> method_tokens;  // token, line
  bool saw_dgp = false;
  int dgp_line = 0;

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw);
    if (s.empty() || s[0] == '#') continue;
    auto eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected key=value");
    const std::string key = lower(trim(s.substr(0, eq)));
    const std::string value = trim(s.substr(eq + 1));
    if (value.empty()) fail(line, "empty value for key '" + key + "'");

    if (key == "task") {
      const std::string t = lower(value);
      if (t == "coverage") {
        config.task = RunConfig::Task::Coverage;
      } else if (t == "width") {
        config.task = RunConfig::Task::Width;
      } else {
        fail(line, "task must be coverage or width");
      }
    } else if (key == "dgp") {
      config.dgp.kind = parse_dgp_kind(value, line);
      saw_dgp = true;
      dgp_line = line;
    } else if (key == "n") {
      config.n_values.clear();
      for (const std::string& item : split_list(value)) {
        long n = parse_long(item, line, key);
        if (n < 4) fail(line, "n must be >= 4");
        config.n_values.push_back(static_cast<int>(n));
      }
      if (config.n_values.empty()) fail(line, "n must list at least one value");
    } else if (key == "d") {
      long d = parse_long(value, line, key);
      if (d < 1) fail(line, "d must be >= 1");
      config.dgp.dim = static_cast<int>(d);
    } else if (key == "methods") {
      for (const std::string& item : split_list(value)) {
        method_tokens.emplace_back(lower(item), line);
      }
    } else if (key == "alpha") {
      alpha = parse_double(value, line, key);
      if (!(alpha > 0.0 && alpha < 1.0)) fail(line, "alpha must lie in (0,1)");
    } else if (key == "reps") {
      long r = parse_long(value, line, key);
      if (r < 1) fail(line, "reps must be >= 1");
      config.reps = static_cast<int>(r);
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(parse_long(value, line, key));
    } else if (key == "ratio") {
      config.ratio = parse_double(value, line, key);
      if (!(config.ratio > 0.0 && config.ratio < 1.0)) fail(line, "ratio must lie in (0,1)");
    } else if (key == "beta") {
      config.dgp.beta = parse_double(value, line, key);
      if (!(config.dgp.beta > 0.0)) fail(line, "beta must be positive");
    } else if (key == "gamma") {
      config.dgp.gamma = parse_double(value, line, key);
      if (!(config.dgp.gamma > 0.0 && config.dgp.gamma < 1.0)) {
        fail(line, "gamma must lie in (0,1)");
      }
    } else if (key == "b0") {
      double b = parse_double(value, line, key);
      if (!(b > 0.0)) fail(line, "b0 must be positive");
      default_b0 = b;
    } else if (key == "cov_diag") {
      config.dgp.cov_diag.clear();
      for (const std::string& item : split_list(value)) {
        double v = parse_double(item, line, key);
        if (!(v > 0.0)) fail(line, "cov_diag entries must be positive");
        config.dgp.cov_diag.push_back(v);
      }
    } else if (key == "manski_angle") {
      config.dgp.manski_angle = parse_double(value, line, key);
    } else if (key == "grid_points") {
      long g = parse_long(value, line, key);
      if (g < 16) fail(line, "grid_points must be >= 16");
      config.grid_points = static_cast<int>(g);
    } else {
      fail(line, "unknown key '" + key + "'");
    }
  }

  if (!saw_dgp) throw ConfigError("config error: missing key 'dgp'");
  if (config.n_values.empty()) throw ConfigError("config error: missing key 'n'");
  if (method_tokens.empty()) throw ConfigError("config error: missing key 'methods'");

  for (const auto& [token, token_line] : method_tokens) {
    std::string name = token;
    std::string arg;
    if (auto colon = token.find(':'); colon != std::string::npos) {
      name = token.substr(0, colon);
      arg = token.substr(colon + 1);
    }
    if (name == "naive") {
      config.methods.push_back(make_naive(alpha));
    } else if (name == "ui") {
      double sigma = arg.empty() ? 1.0 : parse_double(arg, token_line, "methods");
      config.methods.push_back(make_universal(alpha, sigma));
    } else if (name == "eb") {
      std::optional<double> b0 = default_b0;
      if (!arg.empty()) b0 = parse_double(arg, token_line, "methods");
      if (b0) {
        config.methods.push_back(make_empirical_bernstein(alpha, *b0));
      } else {
        MethodSpec m;
        m.kind = MethodKind::EmpiricalBernstein;
        m.alpha = alpha;
        config.methods.push_back(m);  // falls back to the model's bound
      }
    } else if (name == "studentized" || name == "std") {
      config.methods.push_back(make_studentized(alpha));
    } else if (name == "bc" || name == "biascorrected") {
      config.methods.push_back(make_bias_corrected(alpha));
    } else {
      fail(token_line, "unknown method '" + token + "'");
    }
  }

  // Semantic checks before any computation.
  if (config.task == RunConfig::Task::Width && config.methods.size() != 1) {
    throw ConfigError("config error: width runs take exactly one method");
  }
  config.dgp.n_total = config.n_values.front();
  if (config.dgp.kind == DgpKind::Manski2D) config.dgp.dim = 2;
  if (config.dgp.kind == DgpKind::QuantileHolder) config.dgp.dim = 1;
  for (const MethodSpec& m : config.methods) {
    LossModel model = default_loss_model(config.dgp, m);
    if (m.requires_loglik() && !model.has_log_likelihood()) {
      throw ConfigError("config error: method " + m.label() + " is incompatible with dgp " +
                        dgp_kind_name(config.dgp.kind) + " (no log-likelihood)");
    }
    if (m.kind == MethodKind::BiasCorrected && !model.has_hessian_estimator()) {
      throw ConfigError("config error: method " + m.label() + " is incompatible with dgp " +
                        dgp_kind_name(config.dgp.kind) + " (no Hessian estimator)");
    }
    if (m.kind == MethodKind::EmpiricalBernstein && !m.b0 && !model.uniform_bound) {
      throw ConfigError("config error: EmpiricalBernstein needs b0 under dgp " +
                        dgp_kind_name(config.dgp.kind));
    }
  }
  return config;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config error: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string run_custom(const RunConfig& config, const std::string& out_dir,
                       const std::string& experiment) {
  std::vector<CsvRow> rows;
  if (config.task == RunConfig::Task::Coverage) {
    for (int n : config.n_values) {
      CoverageConfig cc;
      cc.dgp = config.dgp;
      cc.dgp.n_total = n;
      cc.methods = config.methods;
      cc.reps = config.reps;
      cc.seed = config.seed;
      cc.split_ratio = config.ratio;
      CoverageReport report = run_coverage(cc);
      auto cell_rows = coverage_rows(experiment, report, config.ratio);
      rows.insert(rows.end(), cell_rows.begin(), cell_rows.end());
    }
  } else {
    WidthConfig wc;
    wc.dgp = config.dgp;
    wc.method = config.methods.front();
    wc.n_values = config.n_values;
    wc.reps = config.reps;
    wc.seed = config.seed;
    wc.split_ratio = config.ratio;
    wc.grid_points = config.grid_points;
    WidthReport report = run_width(wc);
    rows = width_rows(experiment, report, config.ratio);
  }
  if (!std::filesystem::is_directory(out_dir)) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw std::runtime_error("run_custom: cannot create output directory " + out_dir);
  }
  const std::string csv_path = (std::filesystem::path(out_dir) / (experiment + ".csv")).string();
  write_csv(csv_path, rows);
  return csv_path;
}

}  // namespace splitconf
