#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

namespace splitconf {

// Observations are stored as rows; row-major layout keeps a single row
// contiguous so loss evaluations can bind it without copying.
using Dataset = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

using RowView = Eigen::Ref<const Eigen::RowVectorXd>;
using VecView = Eigen::Ref<const Eigen::VectorXd>;

/// Thrown when a method needs a model capability (log-likelihood, uniform
/// bound, Hessian estimator) that the loss model does not provide.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a linear solve meets a numerically singular matrix.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Dataset take_rows(const Dataset& data, const std::vector<Eigen::Index>& idx) {
  Dataset out(static_cast<Eigen::Index>(idx.size()), data.cols());
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    out.row(i) = data.row(idx[static_cast<std::size_t>(i)]);
  }
  return out;
}

}  // namespace splitconf
