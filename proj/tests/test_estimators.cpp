#include "splitconf/estimators.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace splitconf;

TEST_CASE("split block and shuffle behavior") {
  RngStream stream = make_stream(1, 0);
  SplitIndices s = split(10, 0.5, false, stream);
  CHECK(s.d1 == std::vector<Eigen::Index>({0, 1, 2, 3, 4}));
  CHECK(s.d2 == std::vector<Eigen::Index>({5, 6, 7, 8, 9}));

  RngStream a = make_stream(9, 4);
  RngStream b = make_stream(9, 4);
  SplitIndices sa = split(10, 0.5, true, a);
  SplitIndices sb = split(10, 0.5, true, b);
  CHECK(sa.d1 == sb.d1);
  CHECK(sa.d2 == sb.d2);
  CHECK(sa.d1.size() == 5);

  RngStream c = make_stream(1, 0);
  CHECK_THROWS_AS(split(3, 0.5, false, c), std::domain_error);
}

TEST_CASE("split partitions are disjoint and exhaustive") {
  RngStream meta = make_stream(77, 0);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index n = 8 + static_cast<Eigen::Index>(meta.next_u64() % 200);
    const double ratio = 0.25 + 0.5 * meta.uniform();
    const auto n1 = static_cast<Eigen::Index>(std::lround(ratio * static_cast<double>(n)));
    if (n1 < 2 || n - n1 < 2) continue;
    RngStream stream = make_stream(101, static_cast<std::uint64_t>(trial));
    SplitIndices s = split(n, ratio, true, stream);
    CHECK(static_cast<Eigen::Index>(s.d1.size()) == n1);
    std::set<Eigen::Index> all(s.d1.begin(), s.d1.end());
    for (Eigen::Index i : s.d2) {
      CHECK(all.insert(i).second);  // no overlap
    }
    CHECK(static_cast<Eigen::Index>(all.size()) == n);
    CHECK(*all.begin() == 0);
    CHECK(*all.rbegin() == n - 1);
  }
}

TEST_CASE("sample mean estimator") {
  Dataset rows(2, 2);
  rows << 0.0, 0.0, 2.0, 2.0;
  Vector est = sample_mean_estimator(rows);
  CHECK(est(0) == doctest::Approx(1.0));
  CHECK(est(1) == doctest::Approx(1.0));

  Dataset single(1, 3);
  single << 4.0, -1.0, 0.5;
  est = sample_mean_estimator(single);
  CHECK(est(2) == doctest::Approx(0.5));

  Dataset scalars(3, 1);
  scalars << 1.0, 2.0, 3.0;
  CHECK(sample_mean_estimator(scalars)(0) == doctest::Approx(2.0));

  CHECK_THROWS_AS(sample_mean_estimator(Dataset(0, 2)), std::domain_error);
}

TEST_CASE("ols exact fits") {
  Dataset rows(3, 2);
  rows << 2.0, 1.0, 4.0, 2.0, 6.0, 3.0;
  CHECK(ols_estimator(rows)(0) == doctest::Approx(2.0).epsilon(1e-12));

  Dataset zero(3, 2);
  zero << 0.0, 1.0, 0.0, 2.0, 0.0, 3.0;
  CHECK(ols_estimator(zero)(0) == doctest::Approx(0.0));
}

TEST_CASE("ols agrees with an explicit inverse and satisfies the normal equations") {
  RngStream stream = make_stream(31, 0);
  Dataset rows(50, 4);
  for (Eigen::Index i = 0; i < 50; ++i) {
    for (int j = 1; j <= 3; ++j) rows(i, j) = stream.normal();
    rows(i, 0) = 0.7 * rows(i, 1) - 0.2 * rows(i, 2) + 0.5 * stream.normal();
  }
  Vector theta = ols_estimator(rows);

  const auto x = rows.rightCols(3);
  Matrix gram = x.transpose() * x;
  Vector rhs = x.transpose() * rows.col(0);
  Vector brute = oracle::invert_dense(gram) * rhs;
  CHECK((theta - brute).norm() < 1e-8 * std::max(1.0, brute.norm()));
  CHECK((gram * theta - rhs).norm() < 1e-8 * rhs.norm());
}

TEST_CASE("ols equivariance under y -> y + x'c") {
  RngStream stream = make_stream(32, 0);
  Dataset rows(40, 3);
  for (Eigen::Index i = 0; i < 40; ++i) {
    rows(i, 1) = stream.normal();
    rows(i, 2) = stream.normal();
    rows(i, 0) = stream.normal();
  }
  Vector base = ols_estimator(rows);
  Vector c(2);
  c << -1.3, 0.4;
  Dataset shifted = rows;
  for (Eigen::Index i = 0; i < 40; ++i) {
    shifted(i, 0) += c(0) * rows(i, 1) + c(1) * rows(i, 2);
  }
  Vector moved = ols_estimator(shifted);
  CHECK((moved - base - c).norm() < 1e-8);
}

TEST_CASE("ols rejects singular designs") {
  Dataset rows(4, 3);
  // second covariate is an exact copy of the first
  rows << 1.0, 1.0, 1.0, 2.0, 2.0, 2.0, 3.0, 1.5, 1.5, 0.0, -1.0, -1.0;
  CHECK_THROWS_AS(ols_estimator(rows), SingularMatrixError);
}

TEST_CASE("max score on separable data attains the maximum") {
  RngStream stream = make_stream(17, 0);
  Dataset rows(60, 3);
  for (Eigen::Index i = 0; i < 60; ++i) {
    double x1 = stream.normal();
    double x2 = stream.normal();
    rows(i, 0) = x1 >= 0.0 ? 1.0 : -1.0;  // y = sgn(x1): separable by theta = e1
    rows(i, 1) = x1;
    rows(i, 2) = x2;
  }
  Vector theta = max_score_2d(rows, 4096);
  CHECK(theta.norm() == doctest::Approx(1.0).epsilon(1e-12));
  for (Eigen::Index i = 0; i < 60; ++i) {
    double t = theta(0) * rows(i, 1) + theta(1) * rows(i, 2);
    CHECK(rows(i, 0) * (t >= 0.0 ? 1.0 : -1.0) >= 0.0);
  }
}

TEST_CASE("max score equals exhaustive evaluation on a tiny grid") {
  Dataset rows(3, 3);
  rows << 1.0, 1.0, 0.2, -1.0, -0.5, 1.0, 1.0, 0.3, -0.8;
  // smallest grid the precondition allows
  Vector theta = max_score_2d(rows, 8);
  double best = -1e300;
  double best_phi = 0.0;
  for (int k = 0; k < 8; ++k) {
    double phi = 2.0 * M_PI * k / 8.0;
    double score = 0.0;
    for (Eigen::Index i = 0; i < 3; ++i) {
      double t = std::cos(phi) * rows(i, 1) + std::sin(phi) * rows(i, 2);
      score += rows(i, 0) * (t >= 0.0 ? 1.0 : -1.0);
    }
    if (score > best) {
      best = score;
      best_phi = phi;
    }
  }
  CHECK(theta(0) == doctest::Approx(std::cos(best_phi)));
  CHECK(theta(1) == doctest::Approx(std::sin(best_phi)));
}

TEST_CASE("max score is invariant to duplicating the sample") {
  RngStream stream = make_stream(18, 0);
  Dataset rows(25, 3);
  for (Eigen::Index i = 0; i < 25; ++i) {
    rows(i, 0) = stream.uniform() < 0.5 ? -1.0 : 1.0;
    rows(i, 1) = stream.normal();
    rows(i, 2) = stream.normal();
  }
  Dataset doubled(50, 3);
  doubled << rows, rows;
  Vector a = max_score_2d(rows, 256);
  Vector b = max_score_2d(doubled, 256);
  CHECK((a - b).norm() == doctest::Approx(0.0));
}

TEST_CASE("max score result maximizes the grid objective") {
  RngStream stream = make_stream(19, 0);
  Dataset rows(30, 3);
  for (Eigen::Index i = 0; i < 30; ++i) {
    rows(i, 0) = stream.uniform() < 0.5 ? -1.0 : 1.0;
    rows(i, 1) = stream.normal();
    rows(i, 2) = stream.normal();
  }
  const int grid = 128;
  Vector theta = max_score_2d(rows, grid);
  auto score_at = [&](double c, double s) {
    double score = 0.0;
    for (Eigen::Index i = 0; i < 30; ++i) {
      double t = c * rows(i, 1) + s * rows(i, 2);
      score += rows(i, 0) * (t >= 0.0 ? 1.0 : -1.0);
    }
    return score;
  };
  double returned = score_at(theta(0), theta(1));
  for (int k = 0; k < grid; ++k) {
    double phi = 2.0 * M_PI * k / grid;
    CHECK(returned >= score_at(std::cos(phi), std::sin(phi)));
  }
  CHECK_THROWS_AS(max_score_2d(Dataset(4, 2), 128), std::invalid_argument);
  CHECK_THROWS_AS(max_score_2d(rows, 4), std::domain_error);
}

TEST_CASE("sample quantile order statistics") {
  std::vector<double> ten = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  CHECK(sample_quantile(ten, 0.5) == doctest::Approx(5.0));
  std::vector<double> one = {7.0};
  CHECK(sample_quantile(one, 0.1) == doctest::Approx(7.0));
  CHECK(sample_quantile(one, 0.9) == doctest::Approx(7.0));
  std::vector<double> three = {3.0, 1.0, 2.0};
  CHECK(sample_quantile(three, 0.99) == doctest::Approx(3.0));
  CHECK_THROWS_AS(sample_quantile(std::span<const double>{}, 0.5), std::domain_error);
  CHECK_THROWS_AS(sample_quantile(three, 0.0), std::domain_error);
}

TEST_CASE("sample quantile monotonicity and translation") {
  RngStream stream = make_stream(23, 0);
  std::vector<double> values(37);
  for (double& v : values) v = stream.normal();
  double prev = -1e300;
  for (double g = 0.05; g < 1.0; g += 0.05) {
    double q = sample_quantile(values, g);
    CHECK(q >= prev);
    prev = q;
  }
  std::vector<double> shifted = values;
  for (double& v : shifted) v += 2.5;
  for (double g : {0.1, 0.33, 0.5, 0.9}) {
    CHECK(sample_quantile(shifted, g) == sample_quantile(values, g) + 2.5);
  }
}
