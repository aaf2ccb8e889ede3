#pragma once

#include "issvd/core_types.hpp"

#include <functional>

namespace issvd {

/// Selection probabilities over a regularization grid. probs(g, i) is the
/// fraction of subsamples in which coefficient i survives thresholding at
/// lambdas[g]; rows index the grid, columns the coefficients.
struct StabilityPath {
  Eigen::VectorXd lambdas;  // strictly increasing
  Eigen::MatrixXd probs;
  double q_avg = 0.0;  // grid-mean of the expected selected count
};

/// Builds the path from per-subsample score vectors. A coefficient is
/// selected at lambda when |score| > lambda / 2 (the soft-threshold support).
StabilityPath selection_probabilities(const std::vector<Eigen::VectorXd>& subsample_scores,
                                      const Eigen::VectorXd& lambda_grid);

/// Expected number of falsely selected coefficients: q^2 / ((2 pi - 1) m).
double expected_false_bound(double q, double pi_thr, double m);

/// Largest admissible average selection count: sqrt(E (2 pi - 1) m).
double q_max(double error_budget, double pi_thr, double m);

/// Threshold implied by an observed average count: (q^2 / (E m) + 1) / 2.
double pointwise_threshold(double q, double error_budget, double m);

/// Coefficients whose selection probability at `lambda` is at least pi_thr.
/// `lambda` must be a grid point.
IndexSet stable_set(const StabilityPath& path, double lambda, double pi_thr);

/// Produces the per-subsample scores for one search step as an m x I matrix,
/// one column per subsample. Pointwise search calls it with step = 0, 1, ...
/// (fresh subsamples each bisection step); the full-path search calls it once.
using BatchScorer = std::function<Eigen::MatrixXd(int step)>;

struct PointwiseResult {
  double lambda = 0.0;
  double pi_thr = 0.0;
  IndexSet stable;
  bool in_range = false;
};

/// Bisection on lambda over [0, 2 max|full_scores|]: at each step the implied
/// threshold pi is computed from the average selected count; the search stops
/// when pi lands in [pi_min, pi_max] or after max_steps (then the step whose
/// pi was nearest the range wins). All-zero scores yield an empty stable set.
PointwiseResult find_lambda_pointwise(const BatchScorer& scorer, const Eigen::VectorXd& full_scores,
                                      double error_budget, double pi_min, double pi_max,
                                      int max_steps = 50);

struct FullpathResult {
  StabilityPath path;
  double lambda_min = 0.0;
  IndexSet stable;
  bool bound_met = false;
};

/// Builds the full path over a uniform grid on [0, 2 max|full_scores|] and
/// returns the smallest lambda whose region [lambda, lambda_max] keeps the
/// expected number of selections within q_max(E, pi_thr, m); by nestedness of
/// the supports that union count is the expected count at lambda itself. When
/// no grid point qualifies, the largest lambda is returned with
/// bound_met = false.
FullpathResult find_lambda_fullpath(const BatchScorer& scorer, const Eigen::VectorXd& full_scores,
                                    double error_budget, double pi_thr, int grid_size);

}  // namespace issvd
