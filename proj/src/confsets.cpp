#include "splitconf/confsets.hpp"

#include "splitconf/stats.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace splitconf {

namespace {

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("alpha must lie in (0,1)");
  }
}

std::string format_trimmed(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

// Like format_trimmed but always shows a decimal point ("1" -> "1.0").
std::string format_decimal(double v) {
  std::string s = format_trimmed(v);
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos) {
    s += ".0";
  }
  return s;
}

double resolve_b0(const MethodSpec& method, const LossModel& model) {
  if (method.b0) return *method.b0;
  if (model.uniform_bound) return *model.uniform_bound;
  throw CapabilityError("EmpiricalBernstein needs a uniform bound B0");
}

}  // namespace

std::string method_kind_name(MethodKind kind) {
  switch (kind) {
    case MethodKind::Naive: return "Naive";
    case MethodKind::UniversalInference: return "UniversalInference";
    case MethodKind::EmpiricalBernstein: return "EmpiricalBernstein";
    case MethodKind::Studentized: return "Studentized";
    case MethodKind::BiasCorrected: return "BiasCorrected";
  }
  throw std::logic_error("unknown method kind");
}

std::string MethodSpec::label() const {
  switch (kind) {
    case MethodKind::UniversalInference:
      return "UI-sigma=" + format_decimal(sigma);
    case MethodKind::EmpiricalBernstein:
      return b0 ? "EB-B0=" + format_trimmed(*b0) : "EB";
    default:
      return method_kind_name(kind);
  }
}

MethodSpec make_naive(double alpha) {
  check_alpha(alpha);
  return MethodSpec{MethodKind::Naive, alpha, std::nullopt, 1.0};
}

MethodSpec make_universal(double alpha, double sigma) {
  check_alpha(alpha);
  if (!(sigma > 0.0)) throw std::domain_error("make_universal: sigma must be positive");
  return MethodSpec{MethodKind::UniversalInference, alpha, std::nullopt, sigma};
}

MethodSpec make_empirical_bernstein(double alpha, double b0) {
  check_alpha(alpha);
  if (!(b0 > 0.0)) throw std::domain_error("make_empirical_bernstein: B0 must be positive");
  return MethodSpec{MethodKind::EmpiricalBernstein, alpha, b0, 1.0};
}

MethodSpec make_studentized(double alpha) {
  check_alpha(alpha);
  return MethodSpec{MethodKind::Studentized, alpha, std::nullopt, 1.0};
}

MethodSpec make_bias_corrected(double alpha) {
  check_alpha(alpha);
  return MethodSpec{MethodKind::BiasCorrected, alpha, std::nullopt, 1.0};
}

double eb_threshold(const DiffStats& stats, double b0, double alpha) {
  check_alpha(alpha);
  if (stats.n < 2) throw std::domain_error("eb_threshold: need n >= 2");
  if (!(b0 > 0.0)) throw std::domain_error("eb_threshold: B0 must be positive");
  const double log_term = std::log(2.0 / alpha);
  const double n = static_cast<double>(stats.n);
  return std::sqrt(2.0 * stats.emp_var * log_term / n) +
         7.0 * b0 * log_term / (3.0 * (n - 1.0));
}

double clt_threshold(const DiffStats& stats, double alpha) {
  check_alpha(alpha);
  if (stats.n < 2) throw std::domain_error("clt_threshold: need n >= 2");
  const double z = normal_quantile(1.0 - alpha);
  return z * std::sqrt(stats.emp_var / static_cast<double>(stats.n));
}

MembershipResult contains(const MethodSpec& method, const LossModel& model,
                          const Vector& theta, const Vector& theta_hat1,
                          const Dataset& d2_rows) {
  check_alpha(method.alpha);
  if (method.requires_loglik() && !model.has_log_likelihood()) {
    throw CapabilityError("UniversalInference needs a log-likelihood");
  }
  if (method.kind == MethodKind::BiasCorrected && !model.has_hessian_estimator()) {
    throw CapabilityError("BiasCorrected needs a Hessian estimator");
  }

  MembershipResult out;
  if (method.kind == MethodKind::UniversalInference) {
    // Split likelihood-ratio statistic: sum over the inference rows of
    // log p_hat1 - log p_theta, reported alongside the per-row stats.
    if (theta.size() != model.param_dim || theta_hat1.size() != model.param_dim) {
      throw std::invalid_argument("contains: parameter dimension mismatch");
    }
    if (d2_rows.rows() < 2) throw std::domain_error("contains: need at least 2 rows");
    const Eigen::Index n = d2_rows.rows();
    std::vector<double> diffs(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      double d = model.log_likelihood(theta_hat1, d2_rows.row(i)) -
                 model.log_likelihood(theta, d2_rows.row(i));
      diffs[static_cast<std::size_t>(i)] = d;
      sum += d;
    }
    out.diff_stats.n = static_cast<std::size_t>(n);
    out.diff_stats.emp_mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double d : diffs) {
      double c = d - out.diff_stats.emp_mean;
      ss += c * c;
    }
    out.diff_stats.emp_var = ss / static_cast<double>(n - 1);
    out.statistic = sum;
    out.threshold = std::log(1.0 / method.alpha);
  } else {
    out.diff_stats = loss_diff_stats(model, theta, theta_hat1, d2_rows);
    switch (method.kind) {
      case MethodKind::Naive:
        out.statistic = out.diff_stats.emp_mean;
        out.threshold = 0.0;
        break;
      case MethodKind::EmpiricalBernstein:
        out.statistic = out.diff_stats.emp_mean;
        out.threshold = eb_threshold(out.diff_stats, resolve_b0(method, model), method.alpha);
        break;
      case MethodKind::Studentized:
        out.statistic = out.diff_stats.emp_mean;
        out.threshold = clt_threshold(out.diff_stats, method.alpha);
        break;
      case MethodKind::BiasCorrected: {
        const Matrix hess = model.hessian_estimator(d2_rows);
        const Vector delta = theta_hat1 - theta;
        out.statistic =
            out.diff_stats.emp_mean + 0.5 * delta.dot(hess.selfadjointView<Eigen::Lower>() * delta);
        out.threshold = clt_threshold(out.diff_stats, method.alpha);
        break;
      }
      default:
        throw std::logic_error("contains: unhandled method kind");
    }
  }
  out.contained = out.statistic <= out.threshold;
  return out;
}

namespace {

struct LineProbe {
  const MethodSpec& method;
  const LossModel& model;
  const Vector& theta_hat1;
  const Dataset& d2_rows;
  Vector direction;  // empty => 1-D parameter, scan theta_hat1 + t

  bool contained_at(double t) const {
    Vector theta;
    if (direction.size() == 0) {
      theta = theta_hat1;
      theta(0) = theta_hat1(0) + t;
    } else {
      theta = theta_hat1 + t * direction;
    }
    return contains(method, model, theta, theta_hat1, d2_rows).contained;
  }
};

// Sharpen the boundary between a contained point and a non-contained
// neighbor; returns the contained endpoint after 40 bisections.
double bisect_boundary(const LineProbe& probe, double inside, double outside) {
  for (int step = 0; step < 40; ++step) {
    double mid = 0.5 * (inside + outside);
    if (probe.contained_at(mid)) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return inside;
}

IntervalHull scan_line(const LineProbe& probe, double radius, int grid_points) {
  if (!(radius > 0.0)) throw std::domain_error("interval hull: search_radius must be positive");
  if (grid_points < 16) throw std::domain_error("interval hull: grid_points must be >= 16");

  const int g = (grid_points % 2 == 0) ? grid_points + 1 : grid_points;  // center on the grid
  std::vector<double> ts(static_cast<std::size_t>(g));
  std::vector<char> in(static_cast<std::size_t>(g));
  int first = -1;
  int last = -1;
  for (int k = 0; k < g; ++k) {
    double t = -radius + 2.0 * radius * static_cast<double>(k) / static_cast<double>(g - 1);
    ts[static_cast<std::size_t>(k)] = t;
    bool c = probe.contained_at(t);
    in[static_cast<std::size_t>(k)] = c ? 1 : 0;
    if (c) {
      if (first < 0) first = k;
      last = k;
    }
  }
  if (first < 0) {
    // theta_hat1 sits on the grid and is always contained.
    throw std::logic_error("interval hull: no grid point contained; estimator should be inside");
  }

  IntervalHull hull;
  if (first == 0) {
    hull.truncated_lo = true;
    hull.lo = ts.front();
  } else {
    hull.lo = bisect_boundary(probe, ts[static_cast<std::size_t>(first)],
                              ts[static_cast<std::size_t>(first - 1)]);
  }
  if (last == g - 1) {
    hull.truncated_hi = true;
    hull.hi = ts.back();
  } else {
    hull.hi = bisect_boundary(probe, ts[static_cast<std::size_t>(last)],
                              ts[static_cast<std::size_t>(last + 1)]);
  }
  hull.width = hull.hi - hull.lo;
  return hull;
}

}  // namespace

IntervalHull interval_hull_1d(const MethodSpec& method, const LossModel& model,
                              const Vector& theta_hat1, const Dataset& d2_rows,
                              double search_radius, int grid_points) {
  if (model.param_dim != 1) {
    throw std::invalid_argument("interval_hull_1d: model must have param_dim == 1");
  }
  LineProbe probe{method, model, theta_hat1, d2_rows, Vector()};
  IntervalHull hull = scan_line(probe, search_radius, grid_points);
  hull.lo += theta_hat1(0);
  hull.hi += theta_hat1(0);
  return hull;
}

std::vector<IntervalHull> ray_hulls(const MethodSpec& method, const LossModel& model,
                                    const Vector& theta_hat1, const Dataset& d2_rows,
                                    const std::vector<Vector>& directions,
                                    double search_radius, int grid_points) {
  std::vector<IntervalHull> out;
  out.reserve(directions.size());
  for (const Vector& u : directions) {
    if (u.size() != model.param_dim) {
      throw std::invalid_argument("ray_hulls: direction dimension mismatch");
    }
    if (std::abs(u.norm() - 1.0) > 1e-10) {
      throw std::invalid_argument("ray_hulls: directions must have unit norm");
    }
    LineProbe probe{method, model, theta_hat1, d2_rows, u};
    out.push_back(scan_line(probe, search_radius, grid_points));
  }
  return out;
}

std::vector<double> ray_widths(const MethodSpec& method, const LossModel& model,
                               const Vector& theta_hat1, const Dataset& d2_rows,
                               const std::vector<Vector>& directions,
                               double search_radius, int grid_points) {
  std::vector<double> widths;
  for (const IntervalHull& h :
       ray_hulls(method, model, theta_hat1, d2_rows, directions, search_radius, grid_points)) {
    widths.push_back(h.width);
  }
  return widths;
}

double default_search_radius(const MethodSpec& method, const LossModel& model,
                             const Vector& theta_hat1, const Dataset& d2_rows) {
  const MembershipResult at_center = contains(method, model, theta_hat1, theta_hat1, d2_rows);
  return 10.0 * std::sqrt(std::max(0.0, at_center.threshold)) + 1.0;
}

}  // namespace splitconf
