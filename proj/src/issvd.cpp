#include "issvd/issvd.hpp"

#include "issvd/rng.hpp"
#include "issvd/stability.hpp"
#include "issvd/svd_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace issvd {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

Eigen::VectorXd stack_blocks(const std::vector<Eigen::VectorXd>& blocks, Index total) {
  Eigen::VectorXd out(total);
  Index offset = 0;
  for (const auto& b : blocks) {
    out.segment(offset, b.size()) = b;
    offset += b.size();
  }
  return out;
}

// Objective sum_d ||X^(d) - s^(d) u v^(d)T||_F^2 with s^(d) = u^T X^(d) v^(d),
// which collapses to sum_d (||X^(d)||_F^2 - s^(d)^2) for unit u, v.
double objective(const std::vector<Eigen::MatrixXd>& views, const Eigen::VectorXd& u,
                 const std::vector<Eigen::VectorXd>& v) {
  double obj = 0.0;
  for (std::size_t d = 0; d < views.size(); ++d) {
    const double norm2 = views[d].squaredNorm();
    if (v[d].size() == 0 || v[d].isZero(0.0)) {
      obj += norm2;
      continue;
    }
    const double s = u.dot(views[d] * v[d]);
    obj += norm2 - s * s;
  }
  return obj;
}

void zero_outside(Eigen::VectorXd& x, const IndexSet& keep) {
  Eigen::VectorXd masked = Eigen::VectorXd::Zero(x.size());
  for (Index i : keep) masked(i) = x(i);
  x = std::move(masked);
}

std::vector<Eigen::MatrixXd> standardized_views(const MultiViewData& data, Standardize mode) {
  std::vector<Eigen::MatrixXd> out = data.views();
  if (mode == Standardize::none) return out;
  for (auto& X : out) {
    switch (mode) {
      case Standardize::center:
        X.rowwise() -= X.colwise().mean();
        break;
      case Standardize::scale:
      case Standardize::center_scale: {
        const Eigen::RowVectorXd mean = X.colwise().mean();
        Eigen::RowVectorXd sd =
            ((X.rowwise() - mean).colwise().squaredNorm() / std::max<double>(1.0, X.rows() - 1.0))
                .cwiseSqrt();
        for (Index j = 0; j < sd.size(); ++j) {
          if (sd(j) == 0.0) sd(j) = 1.0;  // constant variables stay as they are
        }
        if (mode == Standardize::center_scale) X.rowwise() -= mean;
        X.array().rowwise() /= sd.array();
        break;
      }
      case Standardize::frobenius: {
        const double norm = X.norm();
        if (norm > 0.0) X /= norm;
        break;
      }
      case Standardize::none:
        break;
    }
  }
  return out;
}

// Per-subsample score batches for the left-vector update: subsample a
// fraction of the columns within each view (all samples kept), score
// (X v)_i restricted to the drawn columns, zero out masked rows.
class UScorer {
 public:
  UScorer(const Eigen::MatrixXd& concat, const Eigen::VectorXd& v_stacked,
          const Eigen::ArrayXd& row_mask, const std::vector<Index>& dims, double fraction,
          int n_subsamples, std::uint64_t seed, int layer, int iter)
      : concat_(concat), v_(v_stacked), row_mask_(row_mask), dims_(dims), fraction_(fraction),
        n_subsamples_(n_subsamples), seed_(seed), layer_(layer), iter_(iter) {}

  Eigen::MatrixXd operator()(int step) const {
    Eigen::MatrixXd vm = Eigen::MatrixXd::Zero(concat_.cols(), n_subsamples_);
    for (int b = 0; b < n_subsamples_; ++b) {
      auto g = rng::engine(rng::derive(
          seed_, {rng::kScoreU, static_cast<std::uint64_t>(layer_), static_cast<std::uint64_t>(iter_),
                  static_cast<std::uint64_t>(step), static_cast<std::uint64_t>(b)}));
      Index offset = 0;
      for (Index p : dims_) {
        const Index take = static_cast<Index>(std::ceil(fraction_ * static_cast<double>(p)));
        for (Index j : rng::sample_without_replacement(p, take, g)) {
          vm(offset + j, b) = v_(offset + j);
        }
        offset += p;
      }
    }
    // scaled by 1/fraction so each column estimates the full-data scores
    Eigen::MatrixXd scores = (concat_ * vm) / fraction_;
    scores.array().colwise() *= row_mask_;
    return scores;
  }

 private:
  const Eigen::MatrixXd& concat_;
  const Eigen::VectorXd& v_;
  const Eigen::ArrayXd& row_mask_;
  const std::vector<Index>& dims_;
  double fraction_;
  int n_subsamples_;
  std::uint64_t seed_;
  int layer_;
  int iter_;
};

// Per-subsample score batches for a right-vector update: subsample a fraction
// of the samples (rows). The seed path omits the view index so every view
// sees the same row subsets at the same step.
class VScorer {
 public:
  VScorer(const Eigen::MatrixXd& view, const Eigen::VectorXd& u, const Eigen::ArrayXd& col_mask,
          double fraction, int n_subsamples, std::uint64_t seed, int layer, int iter)
      : view_(view), u_(u), col_mask_(col_mask), fraction_(fraction), n_subsamples_(n_subsamples),
        seed_(seed), layer_(layer), iter_(iter) {}

  Eigen::MatrixXd operator()(int step) const {
    const Index n = view_.rows();
    const Index take = static_cast<Index>(std::ceil(fraction_ * static_cast<double>(n)));
    Eigen::MatrixXd um = Eigen::MatrixXd::Zero(n, n_subsamples_);
    for (int b = 0; b < n_subsamples_; ++b) {
      auto g = rng::engine(rng::derive(
          seed_, {rng::kScoreV, static_cast<std::uint64_t>(layer_), static_cast<std::uint64_t>(iter_),
                  static_cast<std::uint64_t>(step), static_cast<std::uint64_t>(b)}));
      for (Index i : rng::sample_without_replacement(n, take, g)) {
        um(i, b) = u_(i);
      }
    }
    Eigen::MatrixXd scores = (view_.transpose() * um) / fraction_;
    scores.array().colwise() *= col_mask_;
    return scores;
  }

 private:
  const Eigen::MatrixXd& view_;
  const Eigen::VectorXd& u_;
  const Eigen::ArrayXd& col_mask_;
  double fraction_;
  int n_subsamples_;
  std::uint64_t seed_;
  int layer_;
  int iter_;
};

struct SelectionOutcome {
  double lambda = 0.0;
  IndexSet stable;
};

SelectionOutcome run_selection(const BatchScorer& scorer, const Eigen::VectorXd& full_scores,
                               double error_budget, const FitConfig& cfg) {
  SelectionOutcome out;
  if (cfg.pointwise) {
    PointwiseResult res =
        find_lambda_pointwise(scorer, full_scores, error_budget, cfg.pi_min, cfg.pi_max);
    out.lambda = res.lambda;
    out.stable = std::move(res.stable);
  } else {
    // full-path control uses the midpoint of the threshold range
    const double pi_thr = 0.5 * (cfg.pi_min + cfg.pi_max);
    FullpathResult res =
        find_lambda_fullpath(scorer, full_scores, error_budget, pi_thr, cfg.fullpath_grid);
    out.lambda = res.lambda_min;
    out.stable = std::move(res.stable);
  }
  return out;
}

double pearson(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double n = static_cast<double>(a.size());
  if (n < 2.0) return 0.0;
  const Eigen::VectorXd ac = a.array() - a.mean();
  const Eigen::VectorXd bc = b.array() - b.mean();
  const double denom = ac.norm() * bc.norm();
  if (denom == 0.0) return 0.0;
  return ac.dot(bc) / denom;
}

}  // namespace

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& x, double lambda) {
  if (lambda < 0.0) throw input_error("soft_threshold: lambda must be non-negative");
  const double thr = lambda / 2.0;
  return x.array().sign() * (x.array().abs() - thr).max(0.0);
}

Eigen::VectorXd update_v(const Eigen::MatrixXd& X_d, const Eigen::VectorXd& u, double lambda_v) {
  if (u.size() != X_d.rows()) throw input_error("update_v: u length does not match rows");
  return soft_threshold(X_d.transpose() * u, lambda_v);
}

Eigen::VectorXd update_u(const Eigen::MatrixXd& X_concat, const Eigen::VectorXd& v, double lambda_u) {
  if (v.size() != X_concat.cols()) throw input_error("update_u: v length does not match columns");
  return soft_threshold(X_concat * v, lambda_u);
}

bool converged(const SparseLayer& prev, const SparseLayer& curr, double prev_objective,
               double curr_objective, double merr) {
  if (prev.u.size() != curr.u.size() || prev.v.size() != curr.v.size()) {
    throw input_error("converged: layers have mismatched shapes");
  }
  const double rel =
      std::abs(prev_objective - curr_objective) / std::max(std::abs(prev_objective), kEps);
  if (rel < merr) return true;
  const double du = (prev.u - curr.u).squaredNorm();
  double dv = std::numeric_limits<double>::infinity();
  for (std::size_t d = 0; d < prev.v.size(); ++d) {
    dv = std::min(dv, (prev.v[d] - curr.v[d]).squaredNorm());
  }
  return std::max(du, dv) < merr;
}

int select_num_biclusters(const MultiViewData& data, double variance_threshold, int k_user) {
  if (!(variance_threshold > 0.0 && variance_threshold <= 1.0)) {
    throw input_error("select_num_biclusters: threshold must lie in (0, 1]");
  }
  if (k_user < 1) throw input_error("select_num_biclusters: k_user must be positive");
  int k_spectrum = 0;
  for (int d = 0; d < data.n_views(); ++d) {
    const Eigen::VectorXd sv = singular_values(data.view(d));
    const double total = sv.sum();
    if (total <= 0.0) continue;
    double cum = 0.0;
    int count = static_cast<int>(sv.size());
    for (Index i = 0; i < sv.size(); ++i) {
      cum += sv(i) / total;
      if (cum > variance_threshold) {
        count = static_cast<int>(i) + 1;
        break;
      }
    }
    k_spectrum = std::max(k_spectrum, count);
  }
  return std::min(k_spectrum + 1, k_user);
}

BiclusterModel fit(const MultiViewData& data, const FitConfig& config) {
  const int D = data.n_views();
  config.validate(D);
  const Index n = data.n_samples();
  const std::vector<Index> dims = data.dims();
  const Index total_cols = data.total_cols();

  std::vector<Eigen::MatrixXd> work = standardized_views(data, config.standardize);
  {
    double norm2 = 0.0;
    for (const auto& X : work) norm2 += X.squaredNorm();
    if (norm2 == 0.0) throw numeric_error("fit: data is identically zero");
  }
  const MultiViewData work_data(work);
  const int K = select_num_biclusters(work_data, config.variance_threshold, config.k_max);

  double base_norm = 0.0;
  for (const auto& X : work) base_norm += X.squaredNorm();
  base_norm = std::sqrt(base_norm);

  BiclusterModel model;
  model.row_membership = Eigen::VectorXi::Zero(n);
  model.col_membership.reserve(static_cast<std::size_t>(D));
  for (int d = 0; d < D; ++d) model.col_membership.emplace_back(Eigen::VectorXi::Zero(dims[d]));

  Eigen::ArrayXd row_mask = Eigen::ArrayXd::Ones(n);
  std::vector<Eigen::ArrayXd> col_mask;
  for (int d = 0; d < D; ++d) col_mask.emplace_back(Eigen::ArrayXd::Ones(dims[d]));

  for (int k = 0; k < K; ++k) {
    Eigen::MatrixXd concat(n, total_cols);
    {
      Index offset = 0;
      for (const auto& X : work) {
        concat.middleCols(offset, X.cols()) = X;
        offset += X.cols();
      }
    }
    if (concat.norm() <= 1e-12 * std::max(1.0, base_norm)) break;  // nothing left to explain

    SvdTriplet init = leading_triplet(concat);
    Eigen::VectorXd u = init.u.array() * row_mask;
    if (u.norm() == 0.0) break;  // every remaining direction sits on clustered rows
    u.normalize();
    std::vector<Eigen::VectorXd> v = split_vector(init.v, dims);
    for (int d = 0; d < D; ++d) v[d].array() *= col_mask[d];

    SparseLayer prev;
    prev.u = u;
    prev.v = v;
    double prev_obj = objective(work, u, v);

    IndexSet stable_u;
    std::vector<IndexSet> stable_v(static_cast<std::size_t>(D));
    enum class LayerStatus { running, converged, empty_u, empty_v } status = LayerStatus::running;
    int iters_done = 0;
    // After the convergence criterion fires, the stable sets are re-estimated
    // once at the converged iterate; the sets recorded during the alternation
    // lag one update behind it and can retain transient selections.
    bool settling = false;

    for (int iter = 0; iter < config.max_iters + (settling ? 1 : 0); ++iter) {
      iters_done = iter + 1;

      // left vector: stability over column subsamples of the concatenated data
      Eigen::VectorXd v_stacked = stack_blocks(v, total_cols);
      Eigen::VectorXd full_u_scores = (concat * v_stacked).array() * row_mask;
      UScorer u_scorer(concat, v_stacked, row_mask, dims, config.subsample_fraction,
                       config.n_subsamples, config.seed, k, iter);
      SelectionOutcome sel_u =
          run_selection(u_scorer, full_u_scores, config.pceru * static_cast<double>(n), config);
      if (sel_u.stable.empty()) {
        status = LayerStatus::empty_u;
        break;
      }
      Eigen::VectorXd u_tilde = soft_threshold(full_u_scores, sel_u.lambda);
      if (u_tilde.norm() == 0.0) {
        status = LayerStatus::empty_u;
        break;
      }
      Eigen::VectorXd u_new = u_tilde.normalized();
      stable_u = std::move(sel_u.stable);

      // right vectors: stability over shared row subsamples, one view at a time
      std::vector<Eigen::VectorXd> v_new(static_cast<std::size_t>(D));
      bool any_view_alive = false;
      for (int d = 0; d < D; ++d) {
        Eigen::VectorXd full_v_scores = (work[d].transpose() * u_new).array() * col_mask[d];
        VScorer v_scorer(work[d], u_new, col_mask[d], config.subsample_fraction,
                         config.n_subsamples, config.seed, k, iter);
        SelectionOutcome sel_v = run_selection(
            v_scorer, full_v_scores, config.pcer_v(d) * static_cast<double>(dims[d]), config);
        Eigen::VectorXd v_tilde = soft_threshold(full_v_scores, sel_v.lambda);
        if (sel_v.stable.empty() || v_tilde.norm() == 0.0) {
          v_new[d] = Eigen::VectorXd::Zero(dims[d]);
          stable_v[d].clear();
          continue;
        }
        v_new[d] = v_tilde.normalized();
        stable_v[d] = std::move(sel_v.stable);
        any_view_alive = true;
      }
      if (!any_view_alive) {
        status = LayerStatus::empty_v;
        break;
      }

      const double obj = objective(work, u_new, v_new);
      SparseLayer curr;
      curr.u = u_new;
      curr.v = v_new;
      const bool done = converged(prev, curr, prev_obj, obj, config.merr);
      u = std::move(u_new);
      v = std::move(v_new);
      prev = std::move(curr);
      prev_obj = obj;
      if (settling) {
        status = LayerStatus::converged;
        break;
      }
      if (done) {
        if (iter + 1 >= config.max_iters) {
          status = LayerStatus::converged;
          break;
        }
        settling = true;  // one more pass to re-estimate the stable sets
      }
    }

    if (status == LayerStatus::empty_u || status == LayerStatus::empty_v) break;

    // freeze the layer: mask to the stable sets, renormalize, rescale
    SparseLayer layer;
    layer.converged = status == LayerStatus::converged;
    layer.iterations = iters_done;
    layer.u = u;
    zero_outside(layer.u, stable_u);
    if (layer.u.norm() == 0.0) break;
    layer.u.normalize();
    layer.stable_rows = stable_u;
    layer.v.resize(static_cast<std::size_t>(D));
    layer.s.resize(static_cast<std::size_t>(D));
    layer.stable_cols = stable_v;
    bool any_cols = false;
    for (int d = 0; d < D; ++d) {
      layer.v[d] = v[d];
      zero_outside(layer.v[d], stable_v[d]);
      const double norm = layer.v[d].norm();
      if (norm > 0.0) {
        layer.v[d] /= norm;
        any_cols = true;
      } else {
        layer.v[d].setZero();
        layer.stable_cols[d].clear();
      }
      layer.s[d] = layer.u.dot(work[d] * layer.v[d]);
    }
    if (!any_cols) break;

    const int label = static_cast<int>(model.layers.size()) + 1;
    for (Index i : layer.stable_rows) {
      if (model.row_membership(i) == 0) model.row_membership(i) = label;
    }
    for (int d = 0; d < D; ++d) {
      for (Index j : layer.stable_cols[d]) {
        if (model.col_membership[d](j) == 0) model.col_membership[d](j) = label;
      }
    }
    if (!config.row_overlap) {
      for (Index i : layer.stable_rows) row_mask(i) = 0.0;
    }
    if (!config.col_overlap) {
      for (int d = 0; d < D; ++d) {
        for (Index j : layer.stable_cols[d]) col_mask[d](j) = 0.0;
      }
    }
    for (int d = 0; d < D; ++d) {
      work[d].noalias() -= layer.s[d] * layer.u * layer.v[d].transpose();
    }
    model.layers.push_back(std::move(layer));
  }

  model.k_detected = static_cast<int>(model.layers.size());
  return model;
}

BiclusterModel assign_unclustered(const BiclusterModel& model, const MultiViewData& data) {
  BiclusterModel out = model;
  const Index n = data.n_samples();
  if (out.row_membership.size() != n) {
    throw input_error("assign_unclustered: model does not match the data");
  }

  // gather assignment targets: per layer, the stacked variable index list and
  // the first principal component loading of the layer submatrix
  struct Target {
    int label;
    std::vector<std::pair<int, Index>> variables;  // (view, column)
    Eigen::VectorXd loading;
  };
  std::vector<Target> targets;
  for (std::size_t k = 0; k < model.layers.size(); ++k) {
    const SparseLayer& layer = model.layers[k];
    std::vector<std::pair<int, Index>> vars;
    for (int d = 0; d < data.n_views(); ++d) {
      for (Index j : layer.stable_cols[static_cast<std::size_t>(d)]) vars.emplace_back(d, j);
    }
    if (layer.stable_rows.size() < 2 || vars.empty()) continue;  // not a usable target
    Eigen::MatrixXd sub(static_cast<Index>(layer.stable_rows.size()), static_cast<Index>(vars.size()));
    for (std::size_t r = 0; r < layer.stable_rows.size(); ++r) {
      for (std::size_t c = 0; c < vars.size(); ++c) {
        sub(static_cast<Index>(r), static_cast<Index>(c)) =
            data.view(vars[c].first)(layer.stable_rows[r], vars[c].second);
      }
    }
    sub.rowwise() -= sub.colwise().mean();
    if (sub.norm() == 0.0) continue;
    Target t;
    t.label = static_cast<int>(k) + 1;
    t.variables = std::move(vars);
    t.loading = leading_triplet(sub).v;
    targets.push_back(std::move(t));
  }
  if (targets.empty()) return out;  // nothing to assign to; memberships unchanged

  for (Index i = 0; i < n; ++i) {
    if (out.row_membership(i) != 0) continue;
    int best_label = 0;
    double best_corr = -1.0;
    for (const Target& t : targets) {
      Eigen::VectorXd x(static_cast<Index>(t.variables.size()));
      for (std::size_t c = 0; c < t.variables.size(); ++c) {
        x(static_cast<Index>(c)) = data.view(t.variables[c].first)(i, t.variables[c].second);
      }
      const double corr = std::abs(pearson(x, t.loading));
      if (corr > best_corr) {
        best_corr = corr;
        best_label = t.label;
      }
    }
    out.row_membership(i) = best_label;
  }
  return out;
}

std::vector<Bicluster> model_biclusters(const BiclusterModel& model) {
  std::vector<Bicluster> out;
  out.reserve(model.layers.size());
  for (const auto& layer : model.layers) {
    Bicluster b;
    b.rows = layer.stable_rows;
    b.cols = layer.stable_cols;
    out.push_back(std::move(b));
  }
  return out;
}

}  // namespace issvd
