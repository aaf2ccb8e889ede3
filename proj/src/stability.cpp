#include "issvd/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace issvd {

namespace {

// Per-coefficient selection probabilities and the average selected count for
// one score batch (m x I) at a single lambda. Integer counts keep the
// reduction deterministic.
struct BatchStats {
  Eigen::VectorXd probs;
  double q = 0.0;
};

BatchStats batch_stats(const Eigen::MatrixXd& scores, double lambda) {
  const Index m = scores.rows();
  const Index n_sub = scores.cols();
  BatchStats st;
  st.probs = Eigen::VectorXd::Zero(m);
  const double thr = lambda / 2.0;
  long long total = 0;
  for (Index b = 0; b < n_sub; ++b) {
    for (Index i = 0; i < m; ++i) {
      if (std::abs(scores(i, b)) > thr) {
        st.probs(i) += 1.0;
        ++total;
      }
    }
  }
  st.probs /= static_cast<double>(n_sub);
  st.q = static_cast<double>(total) / static_cast<double>(n_sub);
  return st;
}

IndexSet filter_at_least(const Eigen::VectorXd& probs, double pi_thr) {
  IndexSet out;
  for (Index i = 0; i < probs.size(); ++i) {
    if (probs(i) >= pi_thr) out.push_back(i);
  }
  return out;
}

}  // namespace

StabilityPath selection_probabilities(const std::vector<Eigen::VectorXd>& subsample_scores,
                                      const Eigen::VectorXd& lambda_grid) {
  if (subsample_scores.empty()) {
    throw input_error("selection_probabilities: no subsample scores");
  }
  if (lambda_grid.size() == 0) {
    throw input_error("selection_probabilities: empty lambda grid");
  }
  for (Index g = 1; g < lambda_grid.size(); ++g) {
    if (!(lambda_grid(g) > lambda_grid(g - 1))) {
      throw input_error("selection_probabilities: grid must be strictly increasing");
    }
  }
  const Index m = subsample_scores.front().size();
  for (const auto& s : subsample_scores) {
    if (s.size() != m) throw input_error("selection_probabilities: score length mismatch");
  }
  const Index n_sub = static_cast<Index>(subsample_scores.size());
  StabilityPath path;
  path.lambdas = lambda_grid;
  path.probs.setZero(lambda_grid.size(), m);
  for (Index g = 0; g < lambda_grid.size(); ++g) {
    const double thr = lambda_grid(g) / 2.0;
    for (Index b = 0; b < n_sub; ++b) {
      const auto& s = subsample_scores[static_cast<std::size_t>(b)];
      for (Index i = 0; i < m; ++i) {
        if (std::abs(s(i)) > thr) path.probs(g, i) += 1.0;
      }
    }
  }
  path.probs /= static_cast<double>(n_sub);
  path.q_avg = path.probs.sum() / static_cast<double>(lambda_grid.size());
  return path;
}

double expected_false_bound(double q, double pi_thr, double m) {
  if (!(pi_thr > 0.5 && pi_thr <= 1.0)) {
    throw input_error("expected_false_bound: pi_thr must lie in (0.5, 1]");
  }
  if (m < 1.0) throw input_error("expected_false_bound: m must be at least 1");
  if (q < 0.0) throw input_error("expected_false_bound: q must be non-negative");
  return q * q / ((2.0 * pi_thr - 1.0) * m);
}

double q_max(double error_budget, double pi_thr, double m) {
  if (!(pi_thr > 0.5 && pi_thr <= 1.0)) {
    throw input_error("q_max: pi_thr must lie in (0.5, 1]");
  }
  if (m < 1.0) throw input_error("q_max: m must be at least 1");
  if (error_budget < 0.0) throw input_error("q_max: error budget must be non-negative");
  return std::sqrt(error_budget * (2.0 * pi_thr - 1.0) * m);
}

double pointwise_threshold(double q, double error_budget, double m) {
  if (error_budget <= 0.0) throw input_error("pointwise_threshold: error budget must be positive");
  if (m < 1.0) throw input_error("pointwise_threshold: m must be at least 1");
  return 0.5 * (q * q / (error_budget * m) + 1.0);
}

IndexSet stable_set(const StabilityPath& path, double lambda, double pi_thr) {
  const double tol = 1e-12 * std::max(1.0, std::abs(lambda));
  for (Index g = 0; g < path.lambdas.size(); ++g) {
    if (std::abs(path.lambdas(g) - lambda) <= tol) {
      return filter_at_least(path.probs.row(g).transpose(), pi_thr);
    }
  }
  throw input_error("stable_set: lambda is not a grid point");
}

PointwiseResult find_lambda_pointwise(const BatchScorer& scorer, const Eigen::VectorXd& full_scores,
                                      double error_budget, double pi_min, double pi_max,
                                      int max_steps) {
  if (!(pi_min > 0.5 && pi_max <= 1.0 && pi_min <= pi_max)) {
    throw input_error("find_lambda_pointwise: pi range must satisfy 0.5 < pi_min <= pi_max <= 1");
  }
  const double m = static_cast<double>(full_scores.size());
  const double hi0 = 2.0 * full_scores.cwiseAbs().maxCoeff();
  PointwiseResult best;
  if (hi0 <= 0.0) return best;  // all-zero scores: empty stable set, caller stops

  // Bisect toward the smallest lambda whose implied threshold stays in range
  // (the smallest admissible regularization value); among visited states the
  // in-range one with the smallest lambda wins, and when the range is never
  // hit the state with the nearest threshold does.
  double lo = 0.0, hi = hi0;
  double best_dist = std::numeric_limits<double>::infinity();
  double best_lambda = std::numeric_limits<double>::infinity();
  for (int step = 0; step < max_steps; ++step) {
    const double lambda = 0.5 * (lo + hi);
    const Eigen::MatrixXd scores = scorer(step);
    const BatchStats st = batch_stats(scores, lambda);
    const double pi = pointwise_threshold(st.q, error_budget, m);
    const double dist = std::max({pi_min - pi, pi - pi_max, 0.0});
    const bool better = dist < best_dist || (dist == 0.0 && best_dist == 0.0 && lambda < best_lambda);
    if (better) {
      best_dist = dist;
      best_lambda = lambda;
      best.lambda = lambda;
      best.pi_thr = pi;
      best.stable = filter_at_least(st.probs, pi);
      best.in_range = dist == 0.0;
    }
    if (pi > pi_max) {
      lo = lambda;  // too many selections: raise lambda
    } else {
      hi = lambda;  // in range or below: probe smaller lambda
    }
    if (hi - lo <= 1e-3 * hi0) break;
  }
  return best;
}

FullpathResult find_lambda_fullpath(const BatchScorer& scorer, const Eigen::VectorXd& full_scores,
                                    double error_budget, double pi_thr, int grid_size) {
  if (grid_size < 2) throw input_error("find_lambda_fullpath: grid_size must be at least 2");
  const double m = static_cast<double>(full_scores.size());
  const double hi = 2.0 * full_scores.cwiseAbs().maxCoeff();
  FullpathResult out;
  if (hi <= 0.0) return out;

  Eigen::VectorXd grid(grid_size);
  for (int g = 0; g < grid_size; ++g) {
    grid(g) = hi * static_cast<double>(g) / static_cast<double>(grid_size - 1);
  }
  const Eigen::MatrixXd scores = scorer(0);
  std::vector<Eigen::VectorXd> per_subsample;
  per_subsample.reserve(static_cast<std::size_t>(scores.cols()));
  for (Index b = 0; b < scores.cols(); ++b) per_subsample.emplace_back(scores.col(b));
  out.path = selection_probabilities(per_subsample, grid);

  // Supports are nested in lambda, so the expected size of the union of
  // selections over the region [lambda_g, lambda_max] is the expected count
  // at lambda_g itself; the bound is checked against that union count.
  Eigen::VectorXd counts = out.path.probs.rowwise().sum();
  const double bound = q_max(error_budget, pi_thr, m);
  Index chosen = -1;
  for (Index g = 0; g < grid_size; ++g) {
    if (counts(g) <= bound) {
      chosen = g;
      break;
    }
  }
  if (chosen < 0) {
    out.lambda_min = grid(grid_size - 1);
    out.bound_met = false;
    out.stable = stable_set(out.path, out.lambda_min, pi_thr);
  } else {
    out.lambda_min = grid(chosen);
    out.bound_met = true;
    out.stable = stable_set(out.path, out.lambda_min, pi_thr);
  }
  return out;
}

}  // namespace issvd
