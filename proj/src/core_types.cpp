#include "issvd/core_types.hpp"

#include <cmath>
#include <sstream>

namespace issvd {

namespace {

void check_finite(const Eigen::MatrixXd& m, int view_index) {
  if (m.allFinite()) return;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j))) {
        std::ostringstream msg;
        msg << "view " << view_index << " has a non-finite entry at row " << i << ", column " << j;
        throw input_error(msg.str());
      }
    }
  }
}

}  // namespace

MultiViewData::MultiViewData(std::vector<Eigen::MatrixXd> views, std::vector<std::string> sample_ids,
                             std::vector<std::string> view_names)
    : views_(std::move(views)), sample_ids_(std::move(sample_ids)), view_names_(std::move(view_names)) {
  if (views_.empty()) throw input_error("at least one view is required");
  const Index n = views_[0].rows();
  if (n < 1) throw input_error("views must have at least one row");
  for (std::size_t d = 0; d < views_.size(); ++d) {
    if (views_[d].cols() < 1) {
      throw input_error("view " + std::to_string(d) + " has no columns");
    }
    if (views_[d].rows() != n) {
      std::ostringstream msg;
      msg << "view " << d << " has " << views_[d].rows() << " rows, expected " << n;
      throw input_error(msg.str());
    }
    check_finite(views_[d], static_cast<int>(d));
  }
  if (!sample_ids_.empty() && static_cast<Index>(sample_ids_.size()) != n) {
    throw input_error("sample_ids length does not match the row count");
  }
  if (!view_names_.empty() && view_names_.size() != views_.size()) {
    throw input_error("view_names length does not match the view count");
  }
}

std::vector<Index> MultiViewData::dims() const {
  std::vector<Index> out;
  out.reserve(views_.size());
  for (const auto& v : views_) out.push_back(v.cols());
  return out;
}

Index MultiViewData::total_cols() const {
  Index total = 0;
  for (const auto& v : views_) total += v.cols();
  return total;
}

Eigen::MatrixXd concat_views(const MultiViewData& data) {
  Eigen::MatrixXd out(data.n_samples(), data.total_cols());
  Index offset = 0;
  for (const auto& v : data.views()) {
    out.middleCols(offset, v.cols()) = v;
    offset += v.cols();
  }
  return out;
}

std::vector<Eigen::VectorXd> split_vector(const Eigen::VectorXd& v, const std::vector<Index>& dims) {
  Index total = 0;
  for (Index p : dims) {
    if (p < 0) throw input_error("split_vector: negative block length");
    total += p;
  }
  if (v.size() != total) {
    std::ostringstream msg;
    msg << "split_vector: vector length " << v.size() << " does not match block total " << total;
    throw input_error(msg.str());
  }
  std::vector<Eigen::VectorXd> out;
  out.reserve(dims.size());
  Index offset = 0;
  for (Index p : dims) {
    out.emplace_back(v.segment(offset, p));
    offset += p;
  }
  return out;
}

Standardize parse_standardize(const std::string& name) {
  if (name == "none" || name == "false") return Standardize::none;
  if (name == "center") return Standardize::center;
  if (name == "scale") return Standardize::scale;
  if (name == "center_scale" || name == "true") return Standardize::center_scale;
  if (name == "frobenius") return Standardize::frobenius;
  throw input_error("unknown standardization mode '" + name +
                    "' (expected none|center|scale|center_scale|frobenius)");
}

std::string to_string(Standardize s) {
  switch (s) {
    case Standardize::none: return "none";
    case Standardize::center: return "center";
    case Standardize::scale: return "scale";
    case Standardize::center_scale: return "center_scale";
    case Standardize::frobenius: return "frobenius";
  }
  return "none";
}

double FitConfig::pcer_v(int d) const {
  if (pcerv.empty()) return 0.1;
  return pcerv.at(static_cast<std::size_t>(d));
}

void FitConfig::validate(int n_views) const {
  if (k_max < 1) throw input_error("k_max must be positive");
  if (!(variance_threshold > 0.0 && variance_threshold <= 1.0)) {
    throw input_error("variance_threshold must lie in (0, 1]");
  }
  if (pceru <= 0.0) throw input_error("pceru must be positive");
  if (!pcerv.empty() && pcerv.size() != static_cast<std::size_t>(n_views)) {
    throw input_error("pcerv must list one rate per view");
  }
  for (double p : pcerv) {
    if (p <= 0.0) throw input_error("pcerv entries must be positive");
  }
  if (!(pi_min > 0.5 && pi_max <= 1.0 && pi_min <= pi_max)) {
    throw input_error("pi range must satisfy 0.5 < pi_min <= pi_max <= 1");
  }
  if (!(subsample_fraction > 0.0 && subsample_fraction < 1.0)) {
    throw input_error("subsample_fraction must lie in (0, 1)");
  }
  if (n_subsamples < 1) throw input_error("n_subsamples must be positive");
  if (fullpath_grid < 2) throw input_error("fullpath_grid must be at least 2");
  if (merr <= 0.0) throw input_error("merr must be positive");
  if (max_iters < 1) throw input_error("max_iters must be positive");
}

}  // namespace issvd
