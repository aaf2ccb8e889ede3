#pragma once

#include "issvd/core_types.hpp"
#include "issvd/metrics.hpp"
#include "issvd/synthgen.hpp"

#include <string>
#include <vector>

namespace issvd {

inline constexpr int kSchemaVersion = 1;

struct TableOptions {
  bool header = false;      // first row holds column names
  bool row_labels = false;  // first column holds row labels
  char delimiter = '\0';    // '\0': auto-detect on load (tab or comma), ',' on save
};

/// Reads one delimited numeric matrix per path. All files must share the row
/// count; when row labels are present the views are aligned by label against
/// the first file's order. Errors name the file, line and column.
MultiViewData load_views(const std::vector<std::string>& paths, const TableOptions& opts = {});

/// Writes one file per view. Values are formatted so they reload bit-exactly.
void save_views(const MultiViewData& data, const std::vector<std::string>& paths,
                const TableOptions& opts = {});

/// Fit result parsed back from a result document: index sets and memberships
/// only, which is all the evaluate path needs.
struct FitResultDoc {
  std::vector<Bicluster> biclusters;
  Eigen::VectorXi row_membership;
  std::vector<Eigen::VectorXi> col_membership;
  int k_detected = 0;
  Index n = 0;
  std::vector<Index> dims;
};

struct TruthDoc {
  std::vector<Bicluster> biclusters;
  std::string scenario;
  double scalar = 1.0;
  double sigma = 0.0;
  Index n = 0;
  std::vector<Index> dims;
};

std::string write_result_document(const BiclusterModel& model, const FitConfig& config, Index n,
                                  const std::vector<Index>& dims, double wall_time_s);
FitResultDoc read_result_document(const std::string& text);

std::string write_truth_document(const GroundTruth& truth, Index n, const std::vector<Index>& dims);
TruthDoc read_truth_document(const std::string& text);

std::string write_metrics_document(const MetricsReport& report);
MetricsReport read_metrics_document(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace issvd
