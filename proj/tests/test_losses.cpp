#include "splitconf/losses.hpp"

#include "splitconf/stats.hpp"

#include <doctest.h>

#include <cmath>

using namespace splitconf;

namespace {

Dataset make_rows(std::initializer_list<std::initializer_list<double>> rows) {
  Dataset out(static_cast<Eigen::Index>(rows.size()),
              static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) out(i, j++) = v;
    ++i;
  }
  return out;
}

Vector vec(std::initializer_list<double> values) {
  Vector out(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double v : values) out(i++) = v;
  return out;
}

}  // namespace

TEST_CASE("mean loss values and Hessian") {
  LossModel m = mean_loss(2);
  CHECK(m.loss(vec({0.0, 0.0}), Eigen::RowVector2d(0.0, 0.0)) == doctest::Approx(0.0));
  CHECK(m.loss(vec({1.0, 1.0}), Eigen::RowVector2d(0.0, 0.0)) == doctest::Approx(2.0));
  Dataset rows = make_rows({{0.3, -1.0}, {2.0, 0.5}});
  Matrix h = m.hessian_estimator(rows);
  CHECK((h - 2.0 * Matrix::Identity(2, 2)).norm() == doctest::Approx(0.0));
  CHECK(!m.uniform_bound.has_value());
  CHECK(!m.has_log_likelihood());
}

TEST_CASE("mean loss curvature identity") {
  // Expansion around the minimizer: the cross term is centered at t0, so
  // its expectation vanishes when t0 is the population mean and the gap
  // P(m_theta - m_t0) equals ||theta - t0||^2 exactly.
  LossModel m = mean_loss(3);
  RngStream stream = make_stream(3, 1);
  for (int trial = 0; trial < 100; ++trial) {
    Vector theta(3), t0(3);
    Eigen::RowVectorXd x(3);
    for (int j = 0; j < 3; ++j) {
      theta(j) = stream.normal();
      t0(j) = stream.normal();
      x(j) = stream.normal();
    }
    double lhs = m.loss(theta, x) - m.loss(t0, x);
    double rhs = -2.0 * (x.transpose() - t0).dot(theta - t0) + (theta - t0).squaredNorm();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("regression loss values and Gram Hessian") {
  LossModel m = regression_loss(1);
  CHECK(m.loss(vec({0.0}), Eigen::RowVector2d(3.0, 17.0)) == doctest::Approx(9.0));
  CHECK(m.loss(vec({2.0}), Eigen::RowVector2d(4.0, 2.0)) == doctest::Approx(0.0));
  Dataset rows = make_rows({{0.0, 1.0}, {0.0, 2.0}, {0.0, 3.0}});
  Matrix h = m.hessian_estimator(rows);
  CHECK(h(0, 0) == doctest::Approx(2.0 * 14.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("regression Hessian equals twice the sample Gram matrix") {
  LossModel m = regression_loss(3);
  RngStream stream = make_stream(5, 2);
  Dataset rows(40, 4);
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = 0; j < rows.cols(); ++j) rows(i, j) = stream.normal();
  }
  const auto x = rows.rightCols(3);
  Matrix gram = (x.transpose() * x) / 40.0;
  Matrix h = m.hessian_estimator(rows);
  CHECK((h - 2.0 * gram).norm() < 1e-12 * std::max(1.0, gram.norm()));
  CHECK((h - h.transpose()).norm() < 1e-10);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  CHECK(eig.eigenvalues().minCoeff() > -1e-10);
}

TEST_CASE("analytic Hessians agree with central finite differences") {
  RngStream stream = make_stream(8, 0);

  LossModel mean2 = mean_loss(2);
  Dataset mean_rows(12, 2);
  for (Eigen::Index i = 0; i < 12; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) mean_rows(i, j) = stream.normal();
  Vector at = vec({0.4, -0.2});
  Matrix fd = fd_hessian(mean2.loss, mean_rows, at);
  Matrix analytic = mean2.hessian_estimator(mean_rows);
  CHECK((fd - analytic).norm() < 1e-5 * std::max(1.0, analytic.norm()));

  LossModel reg2 = regression_loss(2);
  Dataset reg_rows(15, 3);
  for (Eigen::Index i = 0; i < 15; ++i)
    for (Eigen::Index j = 0; j < 3; ++j) reg_rows(i, j) = stream.normal();
  fd = fd_hessian(reg2.loss, reg_rows, at);
  analytic = reg2.hessian_estimator(reg_rows);
  CHECK((fd - analytic).norm() < 1e-5 * std::max(1.0, analytic.norm()));
}

TEST_CASE("manski loss values, sign convention, and range") {
  LossModel m = manski_loss(2);
  // correct classification
  CHECK(m.loss(vec({1.0, 0.0}), Eigen::RowVector3d(1.0, 2.0, 0.0)) == doctest::Approx(-1.0));
  // misclassification
  CHECK(m.loss(vec({1.0, 0.0}), Eigen::RowVector3d(-1.0, 2.0, 0.0)) == doctest::Approx(1.0));
  // sgn(0) = +1
  CHECK(m.loss(vec({0.0, 1.0}), Eigen::RowVector3d(1.0, 2.0, 0.0)) == doctest::Approx(-1.0));
  CHECK(m.uniform_bound == doctest::Approx(2.0));
  CHECK_THROWS_AS(m.loss(vec({1.0, 0.0}), Eigen::RowVector3d(0.5, 2.0, 0.0)), std::domain_error);

  RngStream stream = make_stream(2, 9);
  for (int trial = 0; trial < 200; ++trial) {
    Vector theta = vec({stream.normal(), stream.normal()});
    Eigen::RowVector3d row(stream.uniform() < 0.5 ? -1.0 : 1.0, stream.normal(), stream.normal());
    double v = m.loss(theta, row);
    CHECK((v == 1.0 || v == -1.0));
    Vector theta2 = vec({stream.normal(), stream.normal()});
    double diff = v - m.loss(theta2, row);
    CHECK((diff == 0.0 || diff == 2.0 || diff == -2.0));
  }
}

TEST_CASE("pinball loss values and convexity") {
  LossModel m = pinball_loss(0.5);
  CHECK(m.loss(vec({2.0}), Eigen::RowVectorXd::Constant(1, 2.0)) == doctest::Approx(0.0));
  CHECK(m.loss(vec({0.0}), Eigen::RowVectorXd::Constant(1, 2.0)) == doctest::Approx(1.0));
  LossModel m9 = pinball_loss(0.9);
  CHECK(m9.loss(vec({1.0}), Eigen::RowVectorXd::Constant(1, 0.0)) ==
        doctest::Approx(0.1).epsilon(1e-12));
  CHECK_THROWS_AS(pinball_loss(0.0), std::domain_error);
  CHECK_THROWS_AS(pinball_loss(1.5), std::domain_error);

  RngStream stream = make_stream(21, 0);
  for (int trial = 0; trial < 300; ++trial) {
    double gamma = 0.05 + 0.9 * stream.uniform();
    LossModel loss = pinball_loss(gamma);
    Eigen::RowVectorXd x = Eigen::RowVectorXd::Constant(1, 3.0 * stream.normal());
    Vector t1 = vec({3.0 * stream.normal()});
    Vector t2 = vec({3.0 * stream.normal()});
    double lambda = stream.uniform();
    Vector mix = lambda * t1 + (1.0 - lambda) * t2;
    CHECK(loss.loss(mix, x) <=
          lambda * loss.loss(t1, x) + (1.0 - lambda) * loss.loss(t2, x) + 1e-12);
  }
}

TEST_CASE("gaussian log-likelihood differences depend only on residuals") {
  LossModel g = gaussian_regression_loglik(1, 0.7);
  Eigen::RowVector2d z(1.5, 2.0);
  Vector t1 = vec({0.3});
  Vector t2 = vec({-0.9});
  double diff = g.log_likelihood(t1, z) - g.log_likelihood(t2, z);
  double r1 = 1.5 - 0.3 * 2.0;
  double r2 = 1.5 + 0.9 * 2.0;
  CHECK(diff == doctest::Approx((r2 * r2 - r1 * r1) / (2.0 * 0.7 * 0.7)).epsilon(1e-12));
  CHECK_THROWS_AS(gaussian_regression_loglik(1, 0.0), std::domain_error);
}

TEST_CASE("gaussian sigma=1 split statistic halves the residual difference sum") {
  LossModel g = gaussian_regression_loglik(1, 1.0);
  Dataset rows = make_rows({{0.5, 1.0}, {2.0, -1.0}, {1.0, 0.5}, {-0.3, 2.0}});
  Vector theta = vec({0.8});
  Vector hat1 = vec({0.1});
  double loglik_sum = 0.0;
  double residual_sum = 0.0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    loglik_sum += g.log_likelihood(hat1, rows.row(i)) - g.log_likelihood(theta, rows.row(i));
    double rt = rows(i, 0) - theta(0) * rows(i, 1);
    double rh = rows(i, 0) - hat1(0) * rows(i, 1);
    residual_sum += rt * rt - rh * rh;
  }
  CHECK(loglik_sum == doctest::Approx(0.5 * residual_sum).epsilon(1e-12));

  // sigma = 0.1 scales the same sum by 1/(2*0.01).
  LossModel g01 = gaussian_regression_loglik(1, 0.1);
  double loglik_sum_01 = 0.0;
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    loglik_sum_01 +=
        g01.log_likelihood(hat1, rows.row(i)) - g01.log_likelihood(theta, rows.row(i));
  }
  CHECK(loglik_sum_01 == doctest::Approx(residual_sum / (2.0 * 0.01)).epsilon(1e-12));
}

TEST_CASE("loss_diff_stats examples") {
  LossModel m = mean_loss(1);
  Dataset rows = make_rows({{0.0}, {2.0}});
  Vector theta = vec({1.0});
  Vector hat1 = vec({0.0});

  DiffStats same = loss_diff_stats(m, theta, theta, rows);
  CHECK(same.emp_mean == doctest::Approx(0.0));
  CHECK(same.emp_var == doctest::Approx(0.0));

  DiffStats s = loss_diff_stats(m, theta, hat1, rows);
  CHECK(s.emp_mean == doctest::Approx(-1.0));
  CHECK(s.emp_var == doctest::Approx(8.0));
  CHECK(s.n == 2);

  LossModel pin = pinball_loss(0.5);
  DiffStats p = loss_diff_stats(pin, theta, hat1, rows);
  CHECK(p.emp_mean == doctest::Approx(0.0));
  CHECK(p.emp_var == doctest::Approx(0.5));

  CHECK_THROWS_AS(loss_diff_stats(m, vec({1.0, 2.0}), hat1, rows), std::invalid_argument);
  CHECK_THROWS_AS(loss_diff_stats(m, theta, hat1, make_rows({{0.0}})), std::domain_error);
}
