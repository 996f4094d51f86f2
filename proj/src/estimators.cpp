#include "splitconf/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace splitconf {

SplitIndices split(Eigen::Index n_total, double ratio, bool shuffle, RngStream& stream) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw std::domain_error("split: ratio must lie in (0,1)");
  }
  const auto n1 = static_cast<Eigen::Index>(std::lround(ratio * static_cast<double>(n_total)));
  if (n_total < 4 || n1 < 2 || n_total - n1 < 2) {
    throw std::domain_error("split: need at least 2 rows on each side");
  }
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n_total));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  if (shuffle) {
    // Fisher-Yates driven by the stream; the leading n1 entries form d1.
    for (Eigen::Index i = n_total - 1; i > 0; --i) {
      auto j = static_cast<Eigen::Index>(stream.next_u64() % static_cast<std::uint64_t>(i + 1));
      std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
  }
  SplitIndices out;
  out.d1.assign(idx.begin(), idx.begin() + n1);
  out.d2.assign(idx.begin() + n1, idx.end());
  std::sort(out.d1.begin(), out.d1.end());
  std::sort(out.d2.begin(), out.d2.end());
  return out;
}

Vector sample_mean_estimator(const Dataset& d1_rows) {
  if (d1_rows.rows() < 1) {
    throw std::domain_error("sample_mean_estimator: empty input");
  }
  return d1_rows.colwise().mean().transpose();
}

Vector ols_estimator(const Dataset& d1_rows) {
  const Eigen::Index d = d1_rows.cols() - 1;
  if (d < 1 || d1_rows.rows() < d) {
    throw std::domain_error("ols_estimator: need rows (y, x) with at least d of them");
  }
  const auto x = d1_rows.rightCols(d);
  const Vector y = d1_rows.col(0);
  const Matrix gram = x.transpose() * x;
  const Vector rhs = x.transpose() * y;

  Eigen::LDLT<Matrix> ldlt(gram);
  const Vector pivots = ldlt.vectorD().cwiseAbs();
  const double largest = pivots.maxCoeff();
  if (ldlt.info() != Eigen::Success || !(largest > 0.0) ||
      pivots.minCoeff() < 1e-12 * largest) {
    throw SingularMatrixError("ols_estimator: Gram matrix is numerically singular");
  }
  return ldlt.solve(rhs);
}

Vector max_score_2d(const Dataset& d1_rows, int grid_size) {
  if (d1_rows.cols() != 3) {
    throw std::invalid_argument("max_score_2d: supports d = 2 only, rows (y, x1, x2)");
  }
  if (grid_size < 8) {
    throw std::domain_error("max_score_2d: grid_size must be >= 8");
  }
  const Eigen::Index n = d1_rows.rows();
  double best_score = -std::numeric_limits<double>::infinity();
  double best_phi = 0.0;
  for (int k = 0; k < grid_size; ++k) {
    const double phi = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(grid_size);
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    double score = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double t = c * d1_rows(i, 1) + s * d1_rows(i, 2);
      score += d1_rows(i, 0) * (t >= 0.0 ? 1.0 : -1.0);
    }
    if (score > best_score) {
      best_score = score;
      best_phi = phi;
    }
  }
  Vector theta(2);
  theta << std::cos(best_phi), std::sin(best_phi);
  return theta;
}

double sample_quantile(std::span<const double> values, double gamma) {
  if (values.empty()) {
    throw std::domain_error("sample_quantile: empty input");
  }
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::domain_error("sample_quantile: gamma must lie in (0,1)");
  }
  const auto n = values.size();
  // Guard against gamma*n landing a hair above an exact integer.
  auto k = static_cast<std::size_t>(
      std::ceil(gamma * static_cast<double>(n) - 1e-9));
  k = std::clamp<std::size_t>(k, 1, n);
  std::vector<double> sorted(values.begin(), values.end());
  std::nth_element(sorted.begin(), sorted.begin() + (k - 1), sorted.end());
  return sorted[k - 1];
}

}  // namespace splitconf
