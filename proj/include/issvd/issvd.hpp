#pragma once

#include "issvd/core_types.hpp"

namespace issvd {

/// Componentwise sign(x) * (|x| - lambda/2)_+. Throws input_error if lambda < 0.
Eigen::VectorXd soft_threshold(const Eigen::VectorXd& x, double lambda);

/// Unnormalized right-vector update: soft_threshold(X_d^T u, lambda_v).
Eigen::VectorXd update_v(const Eigen::MatrixXd& X_d, const Eigen::VectorXd& u, double lambda_v);

/// Unnormalized left-vector update: soft_threshold(X v, lambda_u) on the
/// concatenated data.
Eigen::VectorXd update_u(const Eigen::MatrixXd& X_concat, const Eigen::VectorXd& v, double lambda_u);

/// True when either the relative objective change or the iterate change
/// max(||du||^2, min_d ||dv^(d)||^2) falls below merr.
bool converged(const SparseLayer& prev, const SparseLayer& curr, double prev_objective,
               double curr_objective, double merr);

/// Number of layers to extract: per view, the count of leading singular
/// values whose cumulative share exceeds variance_threshold; the maximum over
/// views plus one, capped at k_user.
int select_num_biclusters(const MultiViewData& data, double variance_threshold, int k_user);

/// Runs the full alternating extraction: per layer, stability-selected
/// updates of u and each v^(d) until convergence, stable-set masking,
/// membership recording and deflation. Stops early on an empty stable set.
BiclusterModel fit(const MultiViewData& data, const FitConfig& config);

/// Assigns every unclustered sample to the layer whose first principal
/// component loading correlates best (in magnitude) with the sample's data
/// over that layer's variables. Layers with fewer than 2 samples or no
/// variables are skipped as targets.
BiclusterModel assign_unclustered(const BiclusterModel& model, const MultiViewData& data);

/// Stable row/column index sets of each layer as plain biclusters.
std::vector<Bicluster> model_biclusters(const BiclusterModel& model);

}  // namespace issvd
