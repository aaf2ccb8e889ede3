#include "issvd/metrics.hpp"

#include "issvd/issvd.hpp"

#include <algorithm>
#include <cstdint>

namespace issvd {

namespace {

std::int64_t intersect_size(const IndexSet& a, const IndexSet& b) {
  std::int64_t count = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++count;
      ++ia;
      ++ib;
    }
  }
  return count;
}

std::int64_t col_total(const Bicluster& b) {
  std::int64_t total = 0;
  for (const auto& c : b.cols) total += static_cast<std::int64_t>(c.size());
  return total;
}

std::int64_t cell_count(const Bicluster& b) {
  return static_cast<std::int64_t>(b.rows.size()) * col_total(b);
}

// cells in common: shared rows times per-view shared columns
std::int64_t cell_intersection(const Bicluster& a, const Bicluster& b) {
  const std::int64_t rows = intersect_size(a.rows, b.rows);
  if (rows == 0) return 0;
  const std::size_t nv = std::min(a.cols.size(), b.cols.size());
  std::int64_t cols = 0;
  for (std::size_t d = 0; d < nv; ++d) cols += intersect_size(a.cols[d], b.cols[d]);
  return rows * cols;
}

}  // namespace

double jaccard(const Bicluster& a, const Bicluster& b) {
  const std::int64_t na = cell_count(a);
  const std::int64_t nb = cell_count(b);
  if (na == 0 && nb == 0) return 0.0;
  const std::int64_t both = cell_intersection(a, b);
  const std::int64_t either = na + nb - both;
  if (either == 0) return 0.0;
  return static_cast<double>(both) / static_cast<double>(either);
}

double relevance(const std::vector<Bicluster>& est, const std::vector<Bicluster>& truth) {
  if (est.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& e : est) {
    double best = 0.0;
    for (const auto& t : truth) best = std::max(best, jaccard(e, t));
    sum += best;
  }
  return sum / static_cast<double>(est.size());
}

double recovery(const std::vector<Bicluster>& est, const std::vector<Bicluster>& truth) {
  if (truth.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& t : truth) {
    double best = 0.0;
    for (const auto& e : est) best = std::max(best, jaccard(t, e));
    sum += best;
  }
  return sum / static_cast<double>(truth.size());
}

double f_score(double relevance, double recovery) {
  const double denom = relevance + recovery;
  if (denom <= 0.0) return 0.0;
  return 2.0 * relevance * recovery / denom;
}

std::pair<double, double> fp_fn_rates(const std::vector<Bicluster>& est,
                                      const std::vector<Bicluster>& truth) {
  if (truth.empty()) throw input_error("fp_fn_rates: truth is empty");
  std::int64_t truth_cells = 0;
  for (const auto& t : truth) truth_cells += cell_count(t);
  if (truth_cells == 0) throw input_error("fp_fn_rates: truth has no cells");

  std::vector<bool> matched(est.size(), false);
  std::int64_t fp_cells = 0;
  std::int64_t fn_cells = 0;
  for (const auto& t : truth) {
    if (est.empty()) {
      fn_cells += cell_count(t);
      continue;
    }
    std::size_t best = 0;
    double best_jac = -1.0;
    for (std::size_t j = 0; j < est.size(); ++j) {
      const double jac = jaccard(t, est[j]);
      if (jac > best_jac) {
        best_jac = jac;
        best = j;
      }
    }
    matched[best] = true;
    const std::int64_t both = cell_intersection(t, est[best]);
    fp_cells += cell_count(est[best]) - both;
    fn_cells += cell_count(t) - both;
  }
  for (std::size_t j = 0; j < est.size(); ++j) {
    if (!matched[j]) fp_cells += cell_count(est[j]);
  }
  return {static_cast<double>(fp_cells) / static_cast<double>(truth_cells),
          static_cast<double>(fn_cells) / static_cast<double>(truth_cells)};
}

int count_unclustered(const BiclusterModel& model) {
  int count = 0;
  for (Index i = 0; i < model.row_membership.size(); ++i) {
    if (model.row_membership(i) == 0) ++count;
  }
  return count;
}

MetricsReport score_model(const BiclusterModel& model, const std::vector<Bicluster>& truth) {
  const std::vector<Bicluster> est = model_biclusters(model);
  MetricsReport report;
  report.relevance = relevance(est, truth);
  report.recovery = recovery(est, truth);
  report.f_score = f_score(report.relevance, report.recovery);
  const auto rates = fp_fn_rates(est, truth);
  report.fp_rate = rates.first;
  report.fn_rate = rates.second;
  report.unclustered_count = count_unclustered(model);
  return report;
}

}  // namespace issvd
