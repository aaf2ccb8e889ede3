#include "issvd/svd_engine.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

using namespace issvd;

TEST_CASE("leading_triplet identity and rank-one cases") {
  SvdTriplet t = leading_triplet(Eigen::MatrixXd::Identity(2, 2));
  CHECK(t.s == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(t.u.norm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(t.v.norm() == doctest::Approx(1.0).epsilon(1e-10));
  Index imax = 0;
  t.u.cwiseAbs().maxCoeff(&imax);
  CHECK(t.u(imax) > 0.0);
  CHECK((t.u - t.v).norm() == doctest::Approx(0.0).epsilon(1e-10));

  Eigen::VectorXd a = testutil::random_vector(6, 31).normalized();
  Eigen::VectorXd b = testutil::random_vector(4, 32).normalized();
  Eigen::MatrixXd X = 3.0 * a * b.transpose();
  SvdTriplet r = leading_triplet(X);
  CHECK(r.s == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(std::abs(r.u.dot(a)) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(r.v.dot(b)) == doctest::Approx(1.0).epsilon(1e-10));

  CHECK_THROWS_AS(leading_triplet(Eigen::MatrixXd::Zero(3, 3)), numeric_error);
}

TEST_CASE("leading_triplet matches the eigendecomposition oracle") {
  // 10x7 (spec shape) plus wide shapes where the oracle side differs from the
  // implementation's Gram side
  for (auto [n, p, seed] : {std::tuple<int, int, int>{10, 7, 41}, {7, 10, 42}, {5, 30, 43}}) {
    Eigen::MatrixXd X = testutil::random_matrix(n, p, static_cast<std::uint64_t>(seed));
    SvdTriplet t = leading_triplet(X);
    const double sigma = testutil::svd_oracle_sigma_max(X);
    CHECK(std::abs(t.s - sigma) < 1e-8);
    CHECK(t.u.norm() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(t.v.norm() == doctest::Approx(1.0).epsilon(1e-10));
    // residual orthogonality of a true singular pair: X v = s u
    CHECK((X * t.v - t.s * t.u).norm() < 1e-7);
    CHECK((X.transpose() * t.u - t.s * t.v).norm() < 1e-7);
  }
}

TEST_CASE("leading_triplet is deterministic") {
  Eigen::MatrixXd X = testutil::random_matrix(12, 9, 55);
  SvdTriplet a = leading_triplet(X);
  SvdTriplet b = leading_triplet(X);
  CHECK(a.s == b.s);
  CHECK(a.u == b.u);
  CHECK(a.v == b.v);
}

TEST_CASE("deflate") {
  Eigen::VectorXd u = testutil::random_vector(8, 61).normalized();
  Eigen::VectorXd v = testutil::random_vector(5, 62).normalized();

  CHECK(deflate(2.5 * u * v.transpose(), 2.5, u, v).norm() == doctest::Approx(0.0).epsilon(1e-12));

  Eigen::MatrixXd X = testutil::random_matrix(8, 5, 63);
  CHECK(deflate(X, 0.0, u, v) == X);

  const double s = u.dot(X * v);
  Eigen::MatrixXd rest = deflate(X, s, u, v);
  CHECK(std::abs(rest.squaredNorm() - (X.squaredNorm() - s * s)) < 1e-10);

  CHECK_THROWS_AS(deflate(X, 1.0, u, testutil::random_vector(4, 64)), input_error);
}

TEST_CASE("proportions_of_variation") {
  Eigen::VectorXd p = proportions_of_variation(Eigen::MatrixXd::Identity(3, 3));
  REQUIRE(p.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(p(i) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  Eigen::VectorXd a = testutil::random_vector(6, 71).normalized();
  Eigen::VectorXd b = testutil::random_vector(9, 72).normalized();
  Eigen::VectorXd r1 = proportions_of_variation(4.0 * a * b.transpose());
  CHECK(r1(0) == doctest::Approx(1.0).epsilon(1e-10));
  for (Index i = 1; i < r1.size(); ++i) CHECK(std::abs(r1(i)) < 1e-10);

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(4, 4);
  d(0, 0) = 2.0;
  d(1, 1) = 1.0;
  Eigen::VectorXd pd = proportions_of_variation(d);
  CHECK(pd(0) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(pd(1) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(std::abs(pd(2)) < 1e-12);
  CHECK(std::abs(pd(3)) < 1e-12);

  CHECK(pd.sum() == doctest::Approx(1.0).epsilon(1e-10));
  for (Index i = 1; i < pd.size(); ++i) CHECK(pd(i) <= pd(i - 1) + 1e-12);

  CHECK_THROWS_AS(proportions_of_variation(Eigen::MatrixXd::Zero(2, 2)), numeric_error);
}

TEST_CASE("proportions_of_variation is rotation invariant") {
  Eigen::MatrixXd X = testutil::random_matrix(8, 6, 81);
  // orthogonal factors from QR of random matrices
  Eigen::HouseholderQR<Eigen::MatrixXd> qr_left(testutil::random_matrix(8, 8, 82));
  Eigen::HouseholderQR<Eigen::MatrixXd> qr_right(testutil::random_matrix(6, 6, 83));
  Eigen::MatrixXd Q = qr_left.householderQ();
  Eigen::MatrixXd R = qr_right.householderQ();
  Eigen::VectorXd base = proportions_of_variation(X);
  Eigen::VectorXd rotated = proportions_of_variation(Q * X * R);
  CHECK((base - rotated).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("singular_values descending and complete") {
  Eigen::MatrixXd X = testutil::random_matrix(5, 12, 91);
  Eigen::VectorXd sv = singular_values(X);
  REQUIRE(sv.size() == 5);
  for (Index i = 1; i < sv.size(); ++i) CHECK(sv(i) <= sv(i - 1) + 1e-12);
  CHECK(std::abs(sv.squaredNorm() - X.squaredNorm()) < 1e-8 * X.squaredNorm());
  CHECK(std::abs(sv(0) - testutil::svd_oracle_sigma_max(X)) < 1e-8);
}
