#pragma once

#include "splitconf/stats.hpp"
#include "splitconf/types.hpp"

#include <vector>

namespace splitconf {

/// Disjoint, exhaustive index sets: d1 feeds the initial estimator, d2 the
/// confidence set.
struct SplitIndices {
  std::vector<Eigen::Index> d1;
  std::vector<Eigen::Index> d2;
};

/// Partition {0..N-1} with |d1| = round(ratio*N). With shuffle the partition
/// is drawn uniformly from the stream; otherwise d1 is the leading block.
/// Requires N >= 4 and at least two indices on each side.
SplitIndices split(Eigen::Index n_total, double ratio, bool shuffle, RngStream& stream);

/// Coordinatewise average of the rows.
Vector sample_mean_estimator(const Dataset& d1_rows);

/// Least squares on rows (y, x): solves the normal equations through a
/// symmetric factorization of the Gram matrix. Throws SingularMatrixError
/// when the smallest pivot falls below 1e-12 times the largest.
Vector ols_estimator(const Dataset& d1_rows);

/// Maximum-score direction for d = 2: evaluates sum_i y_i * sgn(theta'x_i)
/// at theta(phi) = (cos phi, sin phi) over a uniform grid of grid_size
/// angles in [0, 2*pi) and returns the maximizer, ties broken by smallest
/// angle.
Vector max_score_2d(const Dataset& d1_rows, int grid_size);

/// k-th order statistic with k = ceil(gamma * n).
double sample_quantile(std::span<const double> values, double gamma);

}  // namespace splitconf
