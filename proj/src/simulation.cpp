#include "splitconf/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace splitconf {

namespace {

Vector ones_direction(int d) {
  Vector t = Vector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
  return t;
}

void validate(const DgpSpec& dgp) {
  if (dgp.n_total < 4) throw std::domain_error("DgpSpec: n_total must be >= 4");
  if (dgp.dim < 1) throw std::domain_error("DgpSpec: dim must be >= 1");
  switch (dgp.kind) {
    case DgpKind::Manski2D:
      if (dgp.dim != 2) throw std::domain_error("DgpSpec: Manski2D requires dim == 2");
      break;
    case DgpKind::QuantileHolder:
      if (dgp.dim != 1) throw std::domain_error("DgpSpec: QuantileHolder requires dim == 1");
      if (!(dgp.beta > 0.0)) throw std::domain_error("DgpSpec: beta must be positive");
      if (!(dgp.gamma > 0.0 && dgp.gamma < 1.0)) {
        throw std::domain_error("DgpSpec: gamma must lie in (0,1)");
      }
      break;
    case DgpKind::HDMean:
      if (!dgp.cov_diag.empty() && static_cast<int>(dgp.cov_diag.size()) != dgp.dim) {
        throw std::domain_error("DgpSpec: cov_diag size must match dim");
      }
      for (double v : dgp.cov_diag) {
        if (!(v > 0.0)) throw std::domain_error("DgpSpec: cov_diag entries must be positive");
      }
      break;
    default:
      break;
  }
}

double sgn(double t) { return t >= 0.0 ? 1.0 : -1.0; }

}  // namespace

std::string dgp_kind_name(DgpKind kind) {
  switch (kind) {
    case DgpKind::LinearGaussian: return "LinearGaussian";
    case DgpKind::LinearLaplace: return "LinearLaplace";
    case DgpKind::HDMean: return "HDMean";
    case DgpKind::Manski2D: return "Manski2D";
    case DgpKind::QuantileHolder: return "QuantileHolder";
  }
  throw std::logic_error("unknown dgp kind");
}

Vector DgpSpec::true_theta() const {
  switch (kind) {
    case DgpKind::LinearGaussian:
    case DgpKind::LinearLaplace:
    case DgpKind::HDMean:
      return ones_direction(dim);
    case DgpKind::Manski2D: {
      Vector t(2);
      t << std::cos(manski_angle), std::sin(manski_angle);
      return t;
    }
    case DgpKind::QuantileHolder:
      return Vector::Zero(1);
  }
  throw std::logic_error("unknown dgp kind");
}

GeneratedData generate(const DgpSpec& dgp, RngStream& stream) {
  validate(dgp);
  GeneratedData out;
  out.true_theta = dgp.true_theta();
  const int n = dgp.n_total;
  const int d = dgp.dim;

  switch (dgp.kind) {
    case DgpKind::LinearGaussian:
    case DgpKind::LinearLaplace: {
      out.data.resize(n, d + 1);
      for (int i = 0; i < n; ++i) {
        double mean = 0.0;
        for (int j = 0; j < d; ++j) {
          double x = stream.normal();
          out.data(i, j + 1) = x;
          mean += x * out.true_theta(j);
        }
        double eps = dgp.kind == DgpKind::LinearGaussian ? stream.normal() : stream.laplace();
        out.data(i, 0) = mean + eps;
      }
      break;
    }
    case DgpKind::HDMean: {
      out.data.resize(n, d);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) {
          double sd = dgp.cov_diag.empty() ? 1.0 : std::sqrt(dgp.cov_diag[static_cast<std::size_t>(j)]);
          out.data(i, j) = out.true_theta(j) + sd * stream.normal();
        }
      }
      break;
    }
    case DgpKind::Manski2D: {
      out.data.resize(n, 3);
      for (int i = 0; i < n; ++i) {
        double x1 = stream.normal();
        double x2 = stream.normal();
        double eps = stream.normal();
        out.data(i, 0) = sgn(out.true_theta(0) * x1 + out.true_theta(1) * x2 + eps);
        out.data(i, 1) = x1;
        out.data(i, 2) = x2;
      }
      break;
    }
    case DgpKind::QuantileHolder: {
      out.data.resize(n, 1);
      for (int i = 0; i < n; ++i) {
        double u = stream.uniform() - dgp.gamma;
        double mag = std::pow(2.0 * std::abs(u), 1.0 / dgp.beta);
        out.data(i, 0) = (u >= 0.0 ? mag : -mag);
      }
      break;
    }
  }
  return out;
}

LossModel default_loss_model(const DgpSpec& dgp, const MethodSpec& method) {
  switch (dgp.kind) {
    case DgpKind::LinearGaussian:
    case DgpKind::LinearLaplace:
      if (method.kind == MethodKind::UniversalInference) {
        return gaussian_regression_loglik(dgp.dim, method.sigma);
      }
      return regression_loss(dgp.dim);
    case DgpKind::HDMean:
      return mean_loss(dgp.dim);
    case DgpKind::Manski2D:
      return manski_loss(2);
    case DgpKind::QuantileHolder:
      return pinball_loss(dgp.gamma);
  }
  throw std::logic_error("unknown dgp kind");
}

Vector initial_estimator(const DgpSpec& dgp, const Dataset& d1_rows) {
  switch (dgp.kind) {
    case DgpKind::LinearGaussian:
    case DgpKind::LinearLaplace:
      return ols_estimator(d1_rows);
    case DgpKind::HDMean:
      return sample_mean_estimator(d1_rows);
    case DgpKind::Manski2D:
      return max_score_2d(d1_rows, 4096);
    case DgpKind::QuantileHolder: {
      std::vector<double> values(d1_rows.data(), d1_rows.data() + d1_rows.rows());
      Vector t(1);
      t(0) = sample_quantile(values, dgp.gamma);
      return t;
    }
  }
  throw std::logic_error("unknown dgp kind");
}

double MethodCoverage::mc_stderr() const {
  if (reps <= 0) return 0.0;
  double p = coverage();
  return std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
}

int worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("SPLITCONF_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap > 0 && static_cast<unsigned>(cap) < hw) return static_cast<int>(cap);
  }
  return static_cast<int>(hw);
}

namespace {

// Fan replications out to workers; fn(r) must touch only slot r of any
// shared output so the aggregate is schedule-independent.
void parallel_reps(int rep_begin, int rep_end, const std::function<void(int)>& fn) {
  const int total = rep_end - rep_begin;
  if (total <= 0) return;
  const int workers = std::min(worker_count(), total);
  if (workers <= 1) {
    for (int r = rep_begin; r < rep_end; ++r) fn(r);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int r = rep_begin + w; r < rep_end; r += workers) fn(r);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

struct Replication {
  Dataset d1;
  Dataset d2;
  Vector theta_hat1;
  Vector true_theta;
};

Replication run_replication(const DgpSpec& dgp, double split_ratio, std::uint64_t seed, int rep) {
  RngStream stream = make_stream(seed, static_cast<std::uint64_t>(rep));
  GeneratedData gen = generate(dgp, stream);
  SplitIndices idx = split(gen.data.rows(), split_ratio, /*shuffle=*/false, stream);
  Replication out;
  out.d1 = take_rows(gen.data, idx.d1);
  out.d2 = take_rows(gen.data, idx.d2);
  out.theta_hat1 = initial_estimator(dgp, out.d1);
  out.true_theta = std::move(gen.true_theta);
  return out;
}

}  // namespace

CoverageReport run_coverage_range(const CoverageConfig& config, int rep_begin, int rep_end) {
  validate(config.dgp);
  if (config.methods.empty()) throw std::domain_error("run_coverage: no methods given");
  if (rep_begin < 0 || rep_end < rep_begin) {
    throw std::domain_error("run_coverage: bad replication range");
  }
  // Surface incompatible pairings before spending any compute.
  std::vector<LossModel> models;
  models.reserve(config.methods.size());
  for (const MethodSpec& m : config.methods) {
    LossModel model = default_loss_model(config.dgp, m);
    if (m.requires_loglik() && !model.has_log_likelihood()) {
      throw CapabilityError("run_coverage: " + m.label() + " needs a log-likelihood under " +
                            dgp_kind_name(config.dgp.kind));
    }
    if (m.kind == MethodKind::BiasCorrected && !model.has_hessian_estimator()) {
      throw CapabilityError("run_coverage: BiasCorrected needs a Hessian estimator under " +
                            dgp_kind_name(config.dgp.kind));
    }
    if (m.kind == MethodKind::EmpiricalBernstein && !m.b0 && !model.uniform_bound) {
      throw CapabilityError("run_coverage: EmpiricalBernstein needs a uniform bound under " +
                            dgp_kind_name(config.dgp.kind));
    }
    models.push_back(std::move(model));
  }

  const int total = rep_end - rep_begin;
  const auto n_methods = config.methods.size();
  std::vector<char> contained(static_cast<std::size_t>(total) * n_methods, 0);

  parallel_reps(rep_begin, rep_end, [&](int rep) {
    Replication r = run_replication(config.dgp, config.split_ratio, config.seed, rep);
    for (std::size_t m = 0; m < n_methods; ++m) {
      MembershipResult res =
          contains(config.methods[m], models[m], r.true_theta, r.theta_hat1, r.d2);
      contained[static_cast<std::size_t>(rep - rep_begin) * n_methods + m] = res.contained ? 1 : 0;
    }
  });

  CoverageReport report;
  report.dgp = config.dgp;
  report.seed = config.seed;
  report.reps = total;
  for (std::size_t m = 0; m < n_methods; ++m) {
    MethodCoverage cell;
    cell.method = config.methods[m];
    cell.reps = total;
    for (int r = 0; r < total; ++r) {
      cell.contained += contained[static_cast<std::size_t>(r) * n_methods + m];
    }
    report.cells.push_back(cell);
  }
  return report;
}

CoverageReport run_coverage(const CoverageConfig& config) {
  if (config.reps < 1) throw std::domain_error("run_coverage: reps must be >= 1");
  return run_coverage_range(config, 0, config.reps);
}

CoverageReport merge_reports(const CoverageReport& a, const CoverageReport& b) {
  if (a.cells.size() != b.cells.size() || a.seed != b.seed) {
    throw std::invalid_argument("merge_reports: reports come from different configs");
  }
  CoverageReport out = a;
  out.reps += b.reps;
  for (std::size_t m = 0; m < out.cells.size(); ++m) {
    if (a.cells[m].method.kind != b.cells[m].method.kind) {
      throw std::invalid_argument("merge_reports: method lists differ");
    }
    out.cells[m].contained += b.cells[m].contained;
    out.cells[m].reps += b.cells[m].reps;
  }
  return out;
}

WidthReport run_width(const WidthConfig& config) {
  if (config.n_values.empty()) throw std::domain_error("run_width: no sample sizes given");
  if (config.reps < 1) throw std::domain_error("run_width: reps must be >= 1");

  WidthReport report;
  report.dgp = config.dgp;
  report.method = config.method;
  report.seed = config.seed;

  for (int n_total : config.n_values) {
    DgpSpec dgp = config.dgp;
    dgp.n_total = n_total;
    validate(dgp);
    const LossModel model = default_loss_model(dgp, config.method);
    const bool use_rays = model.param_dim > 1;
    if (use_rays && dgp.kind != DgpKind::HDMean) {
      throw CapabilityError("run_width: only HDMean supports dim > 1 (ray scan)");
    }

    std::vector<double> widths(static_cast<std::size_t>(config.reps), 0.0);
    std::vector<char> truncated(static_cast<std::size_t>(config.reps), 0);

    parallel_reps(0, config.reps, [&](int rep) {
      Replication r = run_replication(dgp, config.split_ratio, config.seed, rep);
      double radius = config.search_radius > 0.0
                          ? config.search_radius
                          : default_search_radius(config.method, model, r.theta_hat1, r.d2);
      if (use_rays) {
        std::vector<Vector> dirs;
        for (int j = 0; j < model.param_dim; ++j) {
          Vector e = Vector::Zero(model.param_dim);
          e(j) = 1.0;
          dirs.push_back(e);
        }
        auto hulls = ray_hulls(config.method, model, r.theta_hat1, r.d2, dirs, radius,
                               config.grid_points);
        double w = 0.0;
        bool trunc = false;
        for (const IntervalHull& h : hulls) {
          w = std::max(w, h.width);
          trunc = trunc || h.truncated();
        }
        widths[static_cast<std::size_t>(rep)] = w;
        truncated[static_cast<std::size_t>(rep)] = trunc ? 1 : 0;
      } else {
        IntervalHull h = interval_hull_1d(config.method, model, r.theta_hat1, r.d2, radius,
                                          config.grid_points);
        widths[static_cast<std::size_t>(rep)] = h.width;
        truncated[static_cast<std::size_t>(rep)] = h.truncated() ? 1 : 0;
      }
    });

    std::sort(widths.begin(), widths.end());
    auto quantile_of_sorted = [&](double q) {
      double pos = q * static_cast<double>(widths.size() - 1);
      auto lo = static_cast<std::size_t>(pos);
      auto hi = std::min(lo + 1, widths.size() - 1);
      double frac = pos - static_cast<double>(lo);
      return widths[lo] * (1.0 - frac) + widths[hi] * frac;
    };

    WidthCell cell;
    cell.n_total = n_total;
    cell.reps = config.reps;
    cell.median_width = quantile_of_sorted(0.5);
    cell.iqr = quantile_of_sorted(0.75) - quantile_of_sorted(0.25);
    for (char t : truncated) cell.truncated += t;
    report.cells.push_back(cell);
  }
  return report;
}

}  // namespace splitconf
