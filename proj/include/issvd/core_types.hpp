#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace issvd {

// Malformed user input: files, dimensions, configuration values.
class input_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computation cannot proceed: degenerate data, non-finite values.
class numeric_error : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Index = Eigen::Index;

// Index sets are kept sorted ascending and duplicate-free.
using IndexSet = std::vector<Index>;

/// D sample-aligned views sharing n rows; view d has p^(d) columns.
/// Immutable after construction; all entries are validated finite.
class MultiViewData {
 public:
  explicit MultiViewData(std::vector<Eigen::MatrixXd> views,
                         std::vector<std::string> sample_ids = {},
                         std::vector<std::string> view_names = {});

  Index n_samples() const { return views_[0].rows(); }
  int n_views() const { return static_cast<int>(views_.size()); }
  const Eigen::MatrixXd& view(int d) const { return views_.at(static_cast<std::size_t>(d)); }
  const std::vector<Eigen::MatrixXd>& views() const { return views_; }

  /// Column counts p^(d), in view order.
  std::vector<Index> dims() const;
  Index total_cols() const;

  const std::vector<std::string>& sample_ids() const { return sample_ids_; }
  const std::vector<std::string>& view_names() const { return view_names_; }

 private:
  std::vector<Eigen::MatrixXd> views_;
  std::vector<std::string> sample_ids_;
  std::vector<std::string> view_names_;
};

/// Stacks the views side by side; block d starts at column sum of p^(e), e < d.
Eigen::MatrixXd concat_views(const MultiViewData& data);

/// Splits a stacked vector back into per-view blocks. Inverse of stacking.
std::vector<Eigen::VectorXd> split_vector(const Eigen::VectorXd& v, const std::vector<Index>& dims);

/// One rank-one bicluster layer: shared left vector, per-view right vectors
/// and scales, plus the stable index sets that define the bicluster.
struct SparseLayer {
  Eigen::VectorXd u;
  std::vector<Eigen::VectorXd> v;
  std::vector<double> s;
  IndexSet stable_rows;
  std::vector<IndexSet> stable_cols;
  bool converged = false;
  int iterations = 0;
};

/// Ordered layers plus membership vectors; membership 0 means unclustered.
struct BiclusterModel {
  std::vector<SparseLayer> layers;
  Eigen::VectorXi row_membership;
  std::vector<Eigen::VectorXi> col_membership;
  int k_detected = 0;
};

/// A row set plus one column set per view (a view's set may be empty).
struct Bicluster {
  IndexSet rows;
  std::vector<IndexSet> cols;
};

enum class Standardize { none, center, scale, center_scale, frobenius };

Standardize parse_standardize(const std::string& name);
std::string to_string(Standardize s);

struct FitConfig {
  int k_max = 5;
  double variance_threshold = 0.9;
  double pceru = 0.1;
  std::vector<double> pcerv;  // empty = 0.1 for every view
  double pi_min = 0.6;
  double pi_max = 0.9;
  double subsample_fraction = 0.5;
  int n_subsamples = 100;  // I = J
  bool pointwise = true;
  int fullpath_grid = 100;
  Standardize standardize = Standardize::none;
  bool row_overlap = false;
  bool col_overlap = false;
  double merr = 1e-4;
  int max_iters = 100;
  std::uint64_t seed = 0;

  double pcer_v(int d) const;
  void validate(int n_views) const;  // throws input_error
};

}  // namespace issvd
