// splitconf command line front end.
//
// Subcommands:
//   coverage --preset <name> [--seed S] [--reps R] [--out DIR]
//   coverage --config FILE   [--out DIR]
//   width    --preset <name> [--seed S] [--reps R] [--out DIR]
//   width    --config FILE   [--out DIR]
//   member   --dgp KIND --n N [--d D] --theta "v1,v2,..." --method M
//            [--alpha A] [--seed S] ...
//
// Exit codes: 0 success, 1 usage, 2 config, 3 runtime.

#include "splitconf/presets.hpp"
#include "splitconf/runconfig.hpp"
#include "splitconf/simulation.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::vector<double> parse_vector(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (...) {
      throw splitconf::ConfigError("malformed theta vector '" + text + "'");
    }
  }
  if (out.empty()) throw splitconf::ConfigError("empty theta vector");
  return out;
}

struct PresetArgs {
  std::string preset;
  std::string config_file;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  int reps = 1000;
};

void add_preset_options(CLI::App* cmd, PresetArgs& args) {
  cmd->add_option("--preset", args.preset, "Named experiment grid");
  cmd->add_option("--config", args.config_file, "Flat key=value run description");
  cmd->add_option("--seed", args.seed, "Base seed for the replication streams");
  cmd->add_option("--reps", args.reps, "Replications per cell");
  cmd->add_option("--out", args.out_dir, "Output directory for CSV/SVG files");
}

int run_preset_or_config(const PresetArgs& args, bool width_command) {
  using namespace splitconf;
  if (args.preset.empty() == args.config_file.empty()) {
    std::cerr << "error: give exactly one of --preset or --config\n";
    return kExitUsage;
  }
  if (!args.preset.empty()) {
    const bool known =
        std::find(preset_names().begin(), preset_names().end(), args.preset) != preset_names().end();
    if (!known) {
      std::cerr << "error: unknown preset '" << args.preset << "'; available:";
      for (const std::string& p : preset_names()) std::cerr << ' ' << p;
      std::cerr << '\n';
      return kExitUsage;
    }
    if (width_command != is_width_preset(args.preset)) {
      std::cerr << "error: preset '" << args.preset << "' belongs to the "
                << (is_width_preset(args.preset) ? "width" : "coverage") << " command\n";
      return kExitUsage;
    }
    PresetOutput out = run_preset(args.preset, args.seed, args.reps, args.out_dir);
    for (const std::string& p : out.csv_paths) std::cout << "wrote " << p << '\n';
    for (const std::string& p : out.svg_paths) std::cout << "wrote " << p << '\n';
    return 0;
  }
  RunConfig config = parse_config_file(args.config_file);
  const bool config_is_width = config.task == RunConfig::Task::Width;
  if (width_command != config_is_width) {
    throw ConfigError("config error: task in " + args.config_file + " is " +
                      (config_is_width ? std::string("width") : std::string("coverage")) +
                      ", not the invoked command");
  }
  const std::string stem = std::filesystem::path(args.config_file).stem().string();
  std::string csv = run_custom(config, args.out_dir, stem);
  std::cout << "wrote " << csv << '\n';
  return 0;
}

struct MemberArgs {
  std::string dgp;
  int n = 0;
  int d = 1;
  std::vector<std::string> thetas;
  std::string method = "studentized";
  double alpha = 0.05;
  double sigma = 1.0;
  double b0 = 0.0;
  double beta = 1.0;
  double gamma = 0.5;
  double ratio = 0.5;
  std::uint64_t seed = 0;
  std::string data_file;
  std::string model;  // loss for --data runs
};

int run_member(const MemberArgs& args) {
  using namespace splitconf;

  MethodSpec method;
  const std::string m = args.method;
  if (m == "naive") {
    method = make_naive(args.alpha);
  } else if (m == "ui") {
    method = make_universal(args.alpha, args.sigma);
  } else if (m == "eb") {
    if (args.b0 > 0.0) {
      method = make_empirical_bernstein(args.alpha, args.b0);
    } else {
      method.kind = MethodKind::EmpiricalBernstein;
      method.alpha = args.alpha;
    }
  } else if (m == "studentized" || m == "std") {
    method = make_studentized(args.alpha);
  } else if (m == "bc" || m == "biascorrected") {
    method = make_bias_corrected(args.alpha);
  } else {
    throw ConfigError("unknown method '" + m + "'");
  }

  Dataset data;
  LossModel model;
  Vector theta_hat1;
  DgpSpec dgp;
  if (!args.data_file.empty()) {
    // Whitespace/comma separated rows of reals.
    std::ifstream in(args.data_file);
    if (!in) throw std::runtime_error("cannot open data file " + args.data_file);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
      for (char& c : line) {
        if (c == ',') c = ' ';
      }
      std::istringstream ls(line);
      std::vector<double> row;
      double v;
      while (ls >> v) row.push_back(v);
      if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.size() < 4) throw ConfigError("data file needs at least 4 rows");
    data.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows[0].size()) throw ConfigError("ragged data file");
      for (std::size_t j = 0; j < rows[i].size(); ++j) {
        data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
      }
    }
    const int d = static_cast<int>(data.cols());
    const std::string loss_name = args.model.empty() ? "mean" : args.model;
    if (loss_name == "mean") {
      model = mean_loss(d);
      dgp.kind = DgpKind::HDMean;
    } else if (loss_name == "regression") {
      model = regression_loss(d - 1);
      dgp.kind = DgpKind::LinearGaussian;
    } else if (loss_name == "gaussian") {
      model = gaussian_regression_loglik(d - 1, args.sigma);
      dgp.kind = DgpKind::LinearGaussian;
    } else if (loss_name == "manski") {
      if (d != 3) throw ConfigError("manski data rows must be (y, x1, x2)");
      model = manski_loss(2);
      dgp.kind = DgpKind::Manski2D;
    } else if (loss_name == "pinball") {
      if (d != 1) throw ConfigError("pinball data rows must be scalar");
      model = pinball_loss(args.gamma);
      dgp.kind = DgpKind::QuantileHolder;
      dgp.gamma = args.gamma;
    } else {
      throw ConfigError("unknown model '" + loss_name + "'");
    }
    dgp.dim = model.param_dim;
    dgp.n_total = static_cast<int>(data.rows());
  } else {
    if (args.dgp.empty()) throw ConfigError("give either --dgp or --data");
    if (args.n < 4) throw ConfigError("--n must be >= 4");
    RunConfig rc = parse_config_text("dgp=" + args.dgp + "\nn=" + std::to_string(args.n) +
                                     "\nd=" + std::to_string(args.d) +
                                     "\nbeta=" + std::to_string(args.beta) +
                                     "\ngamma=" + std::to_string(args.gamma) +
                                     "\nmethods=naive\nalpha=0.5\n");
    dgp = rc.dgp;
    RngStream stream = make_stream(args.seed, 0);
    GeneratedData gen = generate(dgp, stream);
    data = std::move(gen.data);
    model = default_loss_model(dgp, method);
  }

  RngStream stream = make_stream(args.seed, 1);
  SplitIndices idx = split(data.rows(), args.ratio, /*shuffle=*/false, stream);
  const Dataset d1 = take_rows(data, idx.d1);
  const Dataset d2 = take_rows(data, idx.d2);
  theta_hat1 = initial_estimator(dgp, d1);

  std::cout << "theta_hat1=[";
  for (Eigen::Index j = 0; j < theta_hat1.size(); ++j) {
    if (j) std::cout << ',';
    std::cout << theta_hat1(j);
  }
  std::cout << "]\n";

  for (const std::string& text : args.thetas) {
    std::vector<double> values = parse_vector(text);
    if (static_cast<int>(values.size()) != model.param_dim) {
      throw ConfigError("theta '" + text + "' has wrong dimension (expected " +
                        std::to_string(model.param_dim) + ")");
    }
    Vector theta = Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
    MembershipResult res = contains(method, model, theta, theta_hat1, d2);
    std::printf("theta=[%s] statistic=%.17g threshold=%.17g contained=%s\n", text.c_str(),
                res.statistic, res.threshold, res.contained ? "yes" : "no");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split-sample confidence sets for M-estimation"};
  app.require_subcommand(1);

  PresetArgs coverage_args;
  CLI::App* coverage = app.add_subcommand("coverage", "Monte Carlo coverage experiments");
  add_preset_options(coverage, coverage_args);

  PresetArgs width_args;
  CLI::App* width = app.add_subcommand("width", "Confidence-set width experiments");
  add_preset_options(width, width_args);

  MemberArgs member_args;
  CLI::App* member = app.add_subcommand("member", "Evaluate set membership for given thetas");
  member->add_option("--dgp", member_args.dgp, "Data-generating process name");
  member->add_option("--data", member_args.data_file, "Data file (rows of reals)");
  member->add_option("--model", member_args.model, "Loss for --data: mean|regression|gaussian|manski|pinball");
  member->add_option("--n", member_args.n, "Sample size for --dgp");
  member->add_option("--d", member_args.d, "Dimension for --dgp");
  member->add_option("--theta", member_args.thetas, "Candidate theta, comma separated (repeatable)")
      ->required();
  member->add_option("--method", member_args.method, "naive|ui|eb|studentized|bc");
  member->add_option("--alpha", member_args.alpha, "Level");
  member->add_option("--sigma", member_args.sigma, "Working-likelihood scale for ui/gaussian");
  member->add_option("--b0", member_args.b0, "Uniform bound for eb");
  member->add_option("--beta", member_args.beta, "QuantileHolder smoothness");
  member->add_option("--gamma", member_args.gamma, "Quantile level");
  member->add_option("--ratio", member_args.ratio, "D1 fraction of the split");
  member->add_option("--seed", member_args.seed, "Stream seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (coverage->parsed()) return run_preset_or_config(coverage_args, false);
    if (width->parsed()) return run_preset_or_config(width_args, true);
    if (member->parsed()) return run_member(member_args);
    std::cerr << "error: no subcommand given\n";
    return kExitUsage;
  } catch (const splitconf::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const splitconf::CapabilityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}
