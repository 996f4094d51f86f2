#pragma once

#include "splitconf/losses.hpp"
#include "splitconf/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace splitconf {

enum class MethodKind {
  Naive,
  UniversalInference,
  EmpiricalBernstein,
  Studentized,
  BiasCorrected,
};

std::string method_kind_name(MethodKind kind);

/// A confidence-set construction with its parameters. alpha is the level of
/// the lower confidence bound; the upper bound is taken to be zero
/// throughout, so alpha is the total miscoverage budget.
struct MethodSpec {
  MethodKind kind = MethodKind::Studentized;
  double alpha = 0.05;
  std::optional<double> b0;  // uniform bound for EmpiricalBernstein
  double sigma = 1.0;        // working-likelihood scale for UniversalInference

  bool requires_loglik() const { return kind == MethodKind::UniversalInference; }

  /// Kind-specific label, e.g. "UI-sigma=1.0" or "EB-B0=2".
  std::string label() const;
};

MethodSpec make_naive(double alpha);
MethodSpec make_universal(double alpha, double sigma = 1.0);
MethodSpec make_empirical_bernstein(double alpha, double b0);
MethodSpec make_studentized(double alpha);
MethodSpec make_bias_corrected(double alpha);

/// One membership evaluation: contained is exactly statistic <= threshold.
struct MembershipResult {
  double statistic = 0.0;
  double threshold = 0.0;
  bool contained = false;
  DiffStats diff_stats;
};

/// Empirical Bernstein threshold
/// sqrt(2 * var * log(2/alpha) / n) + 7 * b0 * log(2/alpha) / (3 * (n - 1)).
double eb_threshold(const DiffStats& stats, double b0, double alpha);

/// Normal-approximation threshold z_alpha * sd / sqrt(n) with
/// z_alpha = normal_quantile(1 - alpha).
double clt_threshold(const DiffStats& stats, double alpha);

/// Evaluates whether theta belongs to the confidence set built around
/// theta_hat1 from the inference rows. Statistic and threshold per method:
///
///   Naive:                mean diff                  <= 0
///   UniversalInference:   sum log(p_hat1 / p_theta)  <= log(1/alpha)
///   EmpiricalBernstein:   mean diff                  <= eb_threshold
///   Studentized:          mean diff                  <= clt_threshold
///   BiasCorrected:        mean diff
///                          + (hat1 - theta)' H (hat1 - theta) / 2
///                                                    <= clt_threshold
///
/// where "mean diff" is the average of m_theta - m_theta_hat1 over the rows
/// and H is the model's Hessian estimate on the same rows. Throws
/// CapabilityError when the model lacks what the method needs.
MembershipResult contains(const MethodSpec& method, const LossModel& model,
                          const Vector& theta, const Vector& theta_hat1,
                          const Dataset& d2_rows);

/// Endpoints of the 1-D confidence set scan. The set can be disconnected,
/// so lo/hi bound its interval hull; truncated flags report when the set
/// reaches the scan boundary.
struct IntervalHull {
  double lo = 0.0;
  double hi = 0.0;
  double width = 0.0;
  bool truncated_lo = false;
  bool truncated_hi = false;

  bool truncated() const { return truncated_lo || truncated_hi; }
};

/// Scans theta over theta_hat1 +- search_radius on a uniform grid (forced
/// odd so the center is evaluated), then sharpens each extreme contained
/// point with 40 bisection steps against its nearest non-contained
/// neighbor.
IntervalHull interval_hull_1d(const MethodSpec& method, const LossModel& model,
                              const Vector& theta_hat1, const Dataset& d2_rows,
                              double search_radius, int grid_points);

/// Per-direction hulls of t -> theta_hat1 + t*u for unit vectors u, each by
/// the 1-D scan over [-search_radius, search_radius]; lo/hi are in the t
/// coordinate.
std::vector<IntervalHull> ray_hulls(const MethodSpec& method, const LossModel& model,
                                    const Vector& theta_hat1, const Dataset& d2_rows,
                                    const std::vector<Vector>& directions,
                                    double search_radius, int grid_points);

/// Chord lengths (hi - lo per direction); their maximum is a lower bound on
/// the set diameter.
std::vector<double> ray_widths(const MethodSpec& method, const LossModel& model,
                               const Vector& theta_hat1, const Dataset& d2_rows,
                               const std::vector<Vector>& directions,
                               double search_radius, int grid_points);

/// Default scan radius 10 * sqrt(threshold at theta_hat1) + 1. Pure
/// bisection from theta_hat1 would miss disconnected components, so the
/// callers scan a grid out to this radius and report truncation instead of
/// hiding it.
double default_search_radius(const MethodSpec& method, const LossModel& model,
                             const Vector& theta_hat1, const Dataset& d2_rows);

}  // namespace splitconf
