#include "issvd/svd_engine.hpp"

#include <algorithm>
#include <cmath>

namespace issvd {

namespace {

// Eigenvalues of the smaller-side Gram matrix, ascending (Eigen's order).
Eigen::VectorXd gram_eigenvalues(const Eigen::MatrixXd& X) {
  Eigen::MatrixXd gram;
  if (X.rows() <= X.cols()) {
    gram.noalias() = X * X.transpose();
  } else {
    gram.noalias() = X.transpose() * X;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace

SvdTriplet leading_triplet(const Eigen::MatrixXd& X) {
  if (X.size() == 0 || X.norm() == 0.0) {
    throw numeric_error("leading_triplet: matrix is zero");
  }
  SvdTriplet t;
  const bool rows_small = X.rows() <= X.cols();
  Eigen::MatrixXd gram;
  if (rows_small) {
    gram.noalias() = X * X.transpose();
  } else {
    gram.noalias() = X.transpose() * X;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
  const Index last = gram.rows() - 1;
  const double lambda = std::max(solver.eigenvalues()(last), 0.0);
  const double sigma = std::sqrt(lambda);
  if (sigma == 0.0) throw numeric_error("leading_triplet: zero leading singular value");
  if (rows_small) {
    t.u = solver.eigenvectors().col(last);
    t.v = X.transpose() * t.u / sigma;
  } else {
    t.v = solver.eigenvectors().col(last);
    t.u = X * t.v / sigma;
  }
  t.u.normalize();
  t.v.normalize();

  // flip jointly so the largest-magnitude entry of u is positive
  Index imax = 0;
  t.u.cwiseAbs().maxCoeff(&imax);
  if (t.u(imax) < 0.0) {
    t.u = -t.u;
    t.v = -t.v;
  }
  t.s = t.u.dot(X * t.v);
  return t;
}

Eigen::MatrixXd deflate(const Eigen::MatrixXd& X, double s, const Eigen::VectorXd& u,
                        const Eigen::VectorXd& v) {
  if (u.size() != X.rows() || v.size() != X.cols()) {
    throw input_error("deflate: vector lengths do not match the matrix");
  }
  return X - s * u * v.transpose();
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& X) {
  if (X.size() == 0) throw input_error("singular_values: empty matrix");
  Eigen::VectorXd ev = gram_eigenvalues(X);
  Eigen::VectorXd out(ev.size());
  for (Index i = 0; i < ev.size(); ++i) {
    out(i) = std::sqrt(std::max(ev(ev.size() - 1 - i), 0.0));
  }
  return out;
}

Eigen::VectorXd proportions_of_variation(const Eigen::MatrixXd& X) {
  if (X.size() == 0 || X.norm() == 0.0) {
    throw numeric_error("proportions_of_variation: matrix is zero");
  }
  Eigen::VectorXd ev = gram_eigenvalues(X);
  const double total = std::max(ev.sum(), 0.0);
  if (total <= 0.0) throw numeric_error("proportions_of_variation: no variation");
  Eigen::VectorXd out(ev.size());
  for (Index i = 0; i < ev.size(); ++i) {
    out(i) = std::max(ev(ev.size() - 1 - i), 0.0) / total;
  }
  return out;
}

}  // namespace issvd
