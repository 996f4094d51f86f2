#pragma once

#include "splitconf/types.hpp"

#include <cstddef>
#include <functional>
#include <optional>

namespace splitconf {

using LossFn = std::function<double(VecView theta, RowView row)>;
using HessianEstimator = std::function<Matrix(const Dataset& rows)>;

/// A loss m_theta(z) together with the optional structure the confidence-set
/// constructions consume: a uniform bound B0 on |m_t1 - m_t2| for the
/// concentration set, a log-likelihood for the split likelihood-ratio set,
/// and a Hessian estimator for the bias-corrected set.
///
/// Observation rows are flat real vectors; supervised losses take the
/// response first, i.e. a row is (y, x_1, ..., x_d).
struct LossModel {
  int param_dim = 0;
  LossFn loss;
  std::optional<double> uniform_bound;
  LossFn log_likelihood;              // empty when the model has none
  HessianEstimator hessian_estimator; // empty when the model has none

  bool has_log_likelihood() const { return static_cast<bool>(log_likelihood); }
  bool has_hessian_estimator() const { return static_cast<bool>(hessian_estimator); }
};

/// Mean and n-1 variance of the per-row differences m_theta - m_theta_hat1
/// over the inference rows.
struct DiffStats {
  double emp_mean = 0.0;
  double emp_var = 0.0;
  std::size_t n = 0;
};

DiffStats loss_diff_stats(const LossModel& model, const Vector& theta,
                          const Vector& theta_hat1, const Dataset& d2_rows);

/// Squared-error location loss ||x - theta||^2; Hessian is the constant 2*I.
LossModel mean_loss(int d);

/// Squared-residual regression loss (y - theta'x)^2 on rows (y, x);
/// the Hessian estimate is (2/n) * sum x_i x_i', twice the sample Gram matrix.
LossModel regression_loss(int d);

/// Score loss -y * sgn(theta'x) on rows (y, x) with y in {-1,+1} and
/// sgn(t) = 2*1{t >= 0} - 1, so sgn(0) = +1. Uniform bound B0 = 2.
LossModel manski_loss(int d);

/// Pinball loss gamma*(x-theta)_+ + (1-gamma)*(theta-x)_+ on scalar rows.
LossModel pinball_loss(double gamma);

/// Gaussian working likelihood for regression with fixed scale sigma:
/// log p_theta(y,x) = -log(2*pi*sigma^2)/2 - (y - theta'x)^2 / (2*sigma^2).
/// The loss is the negative log-likelihood; the Hessian estimate is the
/// sample Gram matrix divided by sigma^2.
LossModel gaussian_regression_loglik(int d, double sigma);

/// Central finite-difference Hessian of theta -> mean loss over rows,
/// with step h = 1e-4 * (1 + ||theta||). Fallback for smooth user losses
/// that lack an analytic estimator.
Matrix fd_hessian(const LossFn& loss, const Dataset& rows, const Vector& theta);

/// The same model with the loss (and bound) multiplied by c > 0; used to
/// probe which constructions are scale-invariant.
LossModel scale_loss(const LossModel& model, double c);

}  // namespace splitconf
