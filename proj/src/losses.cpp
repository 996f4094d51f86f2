#include "splitconf/losses.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace splitconf {

namespace {

void check_dims(const LossModel& model, const Vector& theta, const Vector& theta_hat1,
                const Dataset& rows) {
  if (theta.size() != model.param_dim || theta_hat1.size() != model.param_dim) {
    throw std::invalid_argument("loss_diff_stats: parameter dimension mismatch");
  }
  if (rows.rows() < 2) {
    throw std::domain_error("loss_diff_stats: need at least 2 rows");
  }
}

double sgn(double t) { return t >= 0.0 ? 1.0 : -1.0; }

Matrix gram_matrix(const Dataset& rows, int d) {
  if (rows.cols() != d + 1) {
    throw std::invalid_argument("hessian_estimator: rows must be (y, x_1..x_d)");
  }
  const auto x = rows.rightCols(d);
  Matrix g = (x.transpose() * x) / static_cast<double>(rows.rows());
  return g;
}

}  // namespace

DiffStats loss_diff_stats(const LossModel& model, const Vector& theta,
                          const Vector& theta_hat1, const Dataset& d2_rows) {
  check_dims(model, theta, theta_hat1, d2_rows);
  const Eigen::Index n = d2_rows.rows();
  DiffStats s;
  s.n = static_cast<std::size_t>(n);
  double sum = 0.0;
  std::vector<double> diffs(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    double d = model.loss(theta, d2_rows.row(i)) - model.loss(theta_hat1, d2_rows.row(i));
    diffs[static_cast<std::size_t>(i)] = d;
    sum += d;
  }
  s.emp_mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double d : diffs) {
    double c = d - s.emp_mean;
    ss += c * c;
  }
  s.emp_var = ss / static_cast<double>(n - 1);
  return s;
}

LossModel mean_loss(int d) {
  if (d < 1) throw std::domain_error("mean_loss: d must be >= 1");
  LossModel m;
  m.param_dim = d;
  m.loss = [d](VecView theta, RowView row) {
    return (row.transpose().head(d) - theta).squaredNorm();
  };
  m.hessian_estimator = [d](const Dataset&) { return Matrix(2.0 * Matrix::Identity(d, d)); };
  return m;
}

LossModel regression_loss(int d) {
  if (d < 1) throw std::domain_error("regression_loss: d must be >= 1");
  LossModel m;
  m.param_dim = d;
  m.loss = [d](VecView theta, RowView row) {
    double r = row(0) - row.tail(d).dot(theta);
    return r * r;
  };
  m.hessian_estimator = [d](const Dataset& rows) { return Matrix(2.0 * gram_matrix(rows, d)); };
  return m;
}

LossModel manski_loss(int d) {
  if (d < 1) throw std::domain_error("manski_loss: d must be >= 1");
  LossModel m;
  m.param_dim = d;
  m.loss = [d](VecView theta, RowView row) {
    double y = row(0);
    if (y != 1.0 && y != -1.0) {
      throw std::domain_error("manski_loss: response must be -1 or +1");
    }
    return -y * sgn(row.tail(d).dot(theta));
  };
  m.uniform_bound = 2.0;
  return m;
}

LossModel pinball_loss(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::domain_error("pinball_loss: gamma must lie in (0,1)");
  }
  LossModel m;
  m.param_dim = 1;
  m.loss = [gamma](VecView theta, RowView row) {
    double r = row(0) - theta(0);
    return r >= 0.0 ? gamma * r : (gamma - 1.0) * r;
  };
  return m;
}

LossModel gaussian_regression_loglik(int d, double sigma) {
  if (d < 1) throw std::domain_error("gaussian_regression_loglik: d must be >= 1");
  if (!(sigma > 0.0)) {
    throw std::domain_error("gaussian_regression_loglik: sigma must be positive");
  }
  const double log_norm = 0.5 * std::log(2.0 * M_PI * sigma * sigma);
  const double inv_2s2 = 0.5 / (sigma * sigma);
  LossModel m;
  m.param_dim = d;
  m.log_likelihood = [d, log_norm, inv_2s2](VecView theta, RowView row) {
    double r = row(0) - row.tail(d).dot(theta);
    return -log_norm - inv_2s2 * r * r;
  };
  m.loss = [ll = m.log_likelihood](VecView theta, RowView row) { return -ll(theta, row); };
  m.hessian_estimator = [d, sigma](const Dataset& rows) {
    return Matrix(gram_matrix(rows, d) / (sigma * sigma));
  };
  return m;
}

Matrix fd_hessian(const LossFn& loss, const Dataset& rows, const Vector& theta) {
  const int d = static_cast<int>(theta.size());
  const double h = 1e-4 * (1.0 + theta.norm());
  auto emp = [&](const Vector& t) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < rows.rows(); ++i) s += loss(t, rows.row(i));
    return s / static_cast<double>(rows.rows());
  };
  Matrix out(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = i; j < d; ++j) {
      Vector t = theta;
      double v;
      if (i == j) {
        double f0 = emp(t);
        t(i) = theta(i) + h;
        double fp = emp(t);
        t(i) = theta(i) - h;
        double fm = emp(t);
        v = (fp - 2.0 * f0 + fm) / (h * h);
      } else {
        t(i) = theta(i) + h; t(j) = theta(j) + h;
        double fpp = emp(t);
        t(j) = theta(j) - h;
        double fpm = emp(t);
        t(i) = theta(i) - h; t(j) = theta(j) + h;
        double fmp = emp(t);
        t(j) = theta(j) - h;
        double fmm = emp(t);
        v = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
      }
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

LossModel scale_loss(const LossModel& model, double c) {
  if (!(c > 0.0)) throw std::domain_error("scale_loss: factor must be positive");
  LossModel out = model;
  out.loss = [base = model.loss, c](VecView theta, RowView row) { return c * base(theta, row); };
  if (model.uniform_bound) out.uniform_bound = c * *model.uniform_bound;
  if (model.hessian_estimator) {
    out.hessian_estimator = [base = model.hessian_estimator, c](const Dataset& rows) {
      return Matrix(c * base(rows));
    };
  }
  return out;
}

}  // namespace splitconf
