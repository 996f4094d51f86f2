#pragma once

#include "splitconf/confsets.hpp"
#include "splitconf/estimators.hpp"
#include "splitconf/losses.hpp"
#include "splitconf/stats.hpp"
#include "splitconf/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace splitconf {

enum class DgpKind {
  LinearGaussian,   // y = theta_G'x + eps, x ~ N(0,I), eps ~ N(0,1)
  LinearLaplace,    // same with eps ~ Laplace(0,1)
  HDMean,           // x = theta_G + Sigma^{1/2} g, Sigma diagonal
  Manski2D,         // y = sgn(theta_G'x + eps), x ~ N(0,I_2), theta_G on the circle
  QuantileHolder,   // scalar x with F(x) = gamma + sign(x)|x|^beta / 2 near 0
};

std::string dgp_kind_name(DgpKind kind);

struct DgpSpec {
  DgpKind kind = DgpKind::LinearGaussian;
  int n_total = 0;
  int dim = 1;
  std::vector<double> cov_diag;    // HDMean variances; empty means all ones
  double beta = 1.0;               // QuantileHolder smoothness
  double gamma = 0.5;              // QuantileHolder target quantile
  double manski_angle = 0.0;       // Manski2D: theta_G = (cos a, sin a)

  /// The parameter the confidence sets are checked against.
  Vector true_theta() const;
};

struct GeneratedData {
  Dataset data;
  Vector true_theta;
};

/// Draws n_total rows from the process. For QuantileHolder the draw is
/// x = sign(u - gamma) * (2|u - gamma|)^{1/beta} with u uniform, so the
/// gamma-quantile is exactly zero.
GeneratedData generate(const DgpSpec& dgp, RngStream& stream);

/// Loss model the engine pairs with a DGP; sigma feeds the working
/// likelihood used by universal inference on the regression processes.
LossModel default_loss_model(const DgpSpec& dgp, const MethodSpec& method);

/// Initial estimator computed on the estimation rows: OLS for the linear
/// processes, the sample mean for HDMean, the maximum-score direction for
/// Manski2D (4096-angle grid), the sample quantile for QuantileHolder.
Vector initial_estimator(const DgpSpec& dgp, const Dataset& d1_rows);

struct CoverageConfig {
  DgpSpec dgp;
  std::vector<MethodSpec> methods;
  int reps = 1000;
  std::uint64_t seed = 0;
  double split_ratio = 0.5;
};

struct MethodCoverage {
  MethodSpec method;
  int contained = 0;
  int reps = 0;

  double coverage() const { return reps > 0 ? static_cast<double>(contained) / reps : 0.0; }
  double mc_stderr() const;
};

struct CoverageReport {
  DgpSpec dgp;
  std::uint64_t seed = 0;
  int reps = 0;
  std::vector<MethodCoverage> cells;
};

/// Runs reps independent replications. Replication r uses the stream keyed
/// (seed, r), so the report does not depend on how the replications are
/// scheduled across workers.
CoverageReport run_coverage(const CoverageConfig& config);

/// The same engine over the replication ids [rep_begin, rep_end); partial
/// batches with the same seed merge into exactly the full-batch report.
CoverageReport run_coverage_range(const CoverageConfig& config, int rep_begin, int rep_end);

CoverageReport merge_reports(const CoverageReport& a, const CoverageReport& b);

struct WidthConfig {
  DgpSpec dgp;                    // n_total is taken from n_values cell by cell
  MethodSpec method;
  std::vector<int> n_values;
  int reps = 200;
  std::uint64_t seed = 0;
  double split_ratio = 0.5;
  int grid_points = 129;
  double search_radius = 0.0;     // <= 0 selects the default radius rule
};

struct WidthCell {
  int n_total = 0;
  double median_width = 0.0;
  double iqr = 0.0;
  int truncated = 0;
  int reps = 0;
};

struct WidthReport {
  DgpSpec dgp;
  MethodSpec method;
  std::uint64_t seed = 0;
  std::vector<WidthCell> cells;
};

/// Median set width per sample size. Scalar parameters use the 1-D hull;
/// HDMean with dim > 1 takes the maximum chord over the coordinate
/// directions. Truncated scans are counted, not discarded.
WidthReport run_width(const WidthConfig& config);

/// Worker count for replication fan-out: SPLITCONF_THREADS caps it, 0 or
/// unset means hardware concurrency. Results never depend on it.
int worker_count();

}  // namespace splitconf
