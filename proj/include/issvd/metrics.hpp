#pragma once

#include "issvd/core_types.hpp"

#include <utility>

namespace issvd {

struct MetricsReport {
  double relevance = 0.0;
  double recovery = 0.0;
  double f_score = 0.0;
  double fp_rate = 0.0;
  double fn_rate = 0.0;
  int unclustered_count = 0;
};

/// Jaccard index of two biclusters over their cell sets (rows x stacked
/// columns). 0 when both are empty.
double jaccard(const Bicluster& a, const Bicluster& b);

/// Mean over estimates of the best Jaccard against any truth bicluster.
double relevance(const std::vector<Bicluster>& est, const std::vector<Bicluster>& truth);

/// Mean over truths of the best Jaccard against any estimate.
double recovery(const std::vector<Bicluster>& est, const std::vector<Bicluster>& truth);

/// Harmonic mean of relevance and recovery; 0 when both are 0.
double f_score(double relevance, double recovery);

/// Cell-level false positive and false negative rates against the total true
/// cell count. Each truth bicluster is matched to its best-Jaccard estimate
/// (ties to the lower estimate index); estimates matched to no truth count
/// wholly as false positives. Throws input_error on empty truth.
std::pair<double, double> fp_fn_rates(const std::vector<Bicluster>& est,
                                      const std::vector<Bicluster>& truth);

/// Number of samples with membership 0.
int count_unclustered(const BiclusterModel& model);

/// All metrics of a fitted model against a ground-truth bicluster list.
MetricsReport score_model(const BiclusterModel& model, const std::vector<Bicluster>& truth);

}  // namespace issvd
