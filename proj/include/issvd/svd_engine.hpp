#pragma once

#include "issvd/core_types.hpp"

namespace issvd {

struct SvdTriplet {
  double s = 0.0;
  Eigen::VectorXd u;
  Eigen::VectorXd v;
};

/// Dominant singular triplet of a dense matrix. s >= 0, u and v unit norm.
/// Sign convention: u and v are flipped jointly so the entry of u with the
/// largest magnitude is positive. Throws numeric_error on an all-zero matrix.
SvdTriplet leading_triplet(const Eigen::MatrixXd& X);

/// X - s * u * v^T. When ||u|| = ||v|| = 1 and s = u^T X v, the Frobenius
/// identity ||result||_F^2 = ||X||_F^2 - s^2 holds.
Eigen::MatrixXd deflate(const Eigen::MatrixXd& X, double s, const Eigen::VectorXd& u,
                        const Eigen::VectorXd& v);

/// All min(n, p) singular values, descending.
Eigen::VectorXd singular_values(const Eigen::MatrixXd& X);

/// Fractions sigma_i^2 / sum_j sigma_j^2, non-increasing, summing to 1.
Eigen::VectorXd proportions_of_variation(const Eigen::MatrixXd& X);

}  // namespace issvd
