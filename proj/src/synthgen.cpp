#include "issvd/synthgen.hpp"

#include "issvd/rng.hpp"

#include <algorithm>
#include <cmath>

namespace issvd {

namespace {

// Disjoint index sets of size `block` each, drawn without replacement from
// {0..m-1}: one draw of k*block indices, split in order.
std::vector<IndexSet> disjoint_blocks(Index m, Index block, int k, std::mt19937_64& g) {
  std::vector<Index> picked = rng::sample_without_replacement(m, block * k, g);
  // sample_without_replacement sorts; re-shuffle so block assignment is random
  std::shuffle(picked.begin(), picked.end(), g);
  std::vector<IndexSet> out(static_cast<std::size_t>(k));
  for (int b = 0; b < k; ++b) {
    out[static_cast<std::size_t>(b)].assign(picked.begin() + b * block,
                                            picked.begin() + (b + 1) * block);
    std::sort(out[static_cast<std::size_t>(b)].begin(), out[static_cast<std::size_t>(b)].end());
  }
  return out;
}

Eigen::MatrixXd gaussian_matrix(Index rows, Index cols, std::mt19937_64& g) {
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::MatrixXd out(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) out(i, j) = dist(g);
  }
  return out;
}

void fill_uniform(Eigen::MatrixXd& m, Index col, const IndexSet& rows, std::mt19937_64& g) {
  std::uniform_real_distribution<double> dist(0.5, 1.0);
  for (Index i : rows) m(i, col) = dist(g);
}

}  // namespace

Dataset generate_scenario1(int case_id, double scalar, double sigma, std::uint64_t seed) {
  if (case_id < 1 || case_id > 3) throw input_error("generate_scenario1: case must be 1, 2 or 3");
  if (sigma < 0.0) throw input_error("generate_scenario1: sigma must be non-negative");
  const bool large = case_id == 3;
  const Index n = large ? 500 : 100;
  const Index p = large ? 10000 : 1000;
  const Index row_block = large ? 50 : 10;
  const Index col_block = large ? 200 : 100;
  const int K = 4;
  const double eps_sv = 0.3;

  auto g_place = rng::engine(rng::derive(seed, {rng::kPlacement, static_cast<std::uint64_t>(case_id)}));
  const std::vector<IndexSet> row_sets = disjoint_blocks(n, row_block, K, g_place);
  std::vector<std::vector<IndexSet>> col_sets;  // per view
  for (int d = 0; d < 2; ++d) col_sets.push_back(disjoint_blocks(p, col_block, K, g_place));

  // left factor: K planted columns plus n-K dense Gaussian columns
  auto g_left = rng::engine(rng::derive(seed, {rng::kLeftFactor, static_cast<std::uint64_t>(case_id)}));
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < K; ++k) fill_uniform(U, k, row_sets[static_cast<std::size_t>(k)], g_left);
  U.rightCols(n - K) = gaussian_matrix(n, n - K, g_left);

  Eigen::VectorXd S = Eigen::VectorXd::Constant(n, eps_sv);
  S(0) = 27.0;
  S(1) = 20.0;
  S(2) = 18.0;
  S(3) = 10.0;

  std::vector<Eigen::MatrixXd> views;
  for (int d = 0; d < 2; ++d) {
    auto g_right =
        rng::engine(rng::derive(seed, {rng::kRightFactor, static_cast<std::uint64_t>(case_id),
                                       static_cast<std::uint64_t>(d)}));
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(p, n);
    for (int k = 0; k < K; ++k) {
      fill_uniform(V, k, col_sets[static_cast<std::size_t>(d)][static_cast<std::size_t>(k)], g_right);
    }
    V.rightCols(n - K) = gaussian_matrix(p, n - K, g_right);

    Eigen::MatrixXd X = U * S.asDiagonal() * V.transpose();
    auto g_noise = rng::engine(rng::derive(seed, {rng::kNoise, static_cast<std::uint64_t>(case_id),
                                                  static_cast<std::uint64_t>(d)}));
    if (sigma > 0.0) X += sigma * gaussian_matrix(n, p, g_noise);
    views.push_back(std::move(X));
  }
  views[1] *= scalar;  // unbalanced scales act on the already-noisy view

  GroundTruth truth;
  truth.noise_sigma = sigma;
  truth.scalar = scalar;
  truth.scenario = "scenario1_case" + std::to_string(case_id);
  for (int k = 0; k < K; ++k) {
    Bicluster b;
    b.rows = row_sets[static_cast<std::size_t>(k)];
    b.cols = {col_sets[0][static_cast<std::size_t>(k)], col_sets[1][static_cast<std::size_t>(k)]};
    truth.biclusters.push_back(std::move(b));
  }
  return {MultiViewData(std::move(views)), std::move(truth)};
}

Dataset generate_scenario2(double sigma, std::uint64_t seed) {
  if (sigma < 0.0) throw input_error("generate_scenario2: sigma must be non-negative");
  const Index n = 200;
  const Index p = 1000;
  const Index row_block = 50;
  const Index col_block = 100;
  const int K = 4;

  auto g_place = rng::engine(rng::derive(seed, {rng::kPlacement}));
  const std::vector<IndexSet> row_sets = disjoint_blocks(n, row_block, K, g_place);
  std::vector<std::vector<IndexSet>> col_sets;
  for (int d = 0; d < 2; ++d) col_sets.push_back(disjoint_blocks(p, col_block, K, g_place));

  auto g_left = rng::engine(rng::derive(seed, {rng::kLeftFactor}));
  Eigen::MatrixXd U = Eigen::MatrixXd::Zero(n, K);
  for (int k = 0; k < K; ++k) fill_uniform(U, k, row_sets[static_cast<std::size_t>(k)], g_left);

  Eigen::VectorXd S(K);
  S << 27.0, 20.0, 18.0, 10.0;

  std::vector<Eigen::MatrixXd> views;
  for (int d = 0; d < 2; ++d) {
    auto g_right = rng::engine(rng::derive(seed, {rng::kRightFactor, static_cast<std::uint64_t>(d)}));
    Eigen::MatrixXd V = Eigen::MatrixXd::Zero(p, K);
    for (int k = 0; k < K; ++k) {
      fill_uniform(V, k, col_sets[static_cast<std::size_t>(d)][static_cast<std::size_t>(k)], g_right);
    }
    Eigen::MatrixXd X = U * S.asDiagonal() * V.transpose();
    auto g_noise = rng::engine(rng::derive(seed, {rng::kNoise, static_cast<std::uint64_t>(d)}));
    if (sigma > 0.0) X += sigma * gaussian_matrix(n, p, g_noise);
    views.push_back(std::move(X));
  }

  GroundTruth truth;
  truth.noise_sigma = sigma;
  truth.scalar = 1.0;
  truth.scenario = "scenario2";
  for (int k = 0; k < K; ++k) {
    Bicluster b;
    b.rows = row_sets[static_cast<std::size_t>(k)];
    b.cols = {col_sets[0][static_cast<std::size_t>(k)], col_sets[1][static_cast<std::size_t>(k)]};
    truth.biclusters.push_back(std::move(b));
  }
  return {MultiViewData(std::move(views)), std::move(truth)};
}

namespace detail {

Eigen::MatrixXd outlier_blocks(std::uint64_t seed, int view) {
  const Index n = 200;
  const Index p = 1000;
  const Index row_block = 50;
  const Index col_block = 250;
  auto g = rng::engine(rng::derive(seed, {rng::kLeftFactor, static_cast<std::uint64_t>(view)}));
  auto draw = [&g](int lo, int hi) {
    std::uniform_int_distribution<int> dist(lo, hi);
    return static_cast<double>(dist(g));
  };
  Eigen::MatrixXd X = Eigen::MatrixXd::Zero(n, p);
  for (int k = 0; k < 4; ++k) {
    const Index r0 = k * row_block;
    const Index c0 = k * col_block;
    for (Index i = 0; i < row_block; ++i) {
      for (Index j = 0; j < col_block; ++j) {
        double value = 0.0;
        switch (k) {
          case 0: value = i < 5 ? draw(0, 1) : draw(1, 2); break;
          case 1: value = draw(1, 3); break;
          case 2: value = draw(2, 3); break;
          case 3:
            // rows 199 and 200 (1-based) are the constant outlier rows
            if (r0 + i == 198) {
              value = 1.1;
            } else if (r0 + i == 199) {
              value = 1.2;
            } else {
              value = draw(0, 2);
            }
            break;
        }
        X(r0 + i, c0 + j) = value;
      }
    }
  }
  return X;
}

}  // namespace detail

Dataset generate_outlier_scenario(std::uint64_t seed) {
  const Index row_block = 50;
  const Index col_block = 250;
  const double sigmas[2] = {0.1, 0.15};

  std::vector<Eigen::MatrixXd> views;
  for (int d = 0; d < 2; ++d) {
    Eigen::MatrixXd X = detail::outlier_blocks(seed, d);
    auto g_noise = rng::engine(rng::derive(seed, {rng::kNoise, static_cast<std::uint64_t>(d)}));
    X += sigmas[d] * gaussian_matrix(X.rows(), X.cols(), g_noise);
    views.push_back(std::move(X));
  }

  GroundTruth truth;
  truth.noise_sigma = sigmas[0];
  truth.scalar = 1.0;
  truth.scenario = "outlier";
  for (int k = 0; k < 4; ++k) {
    Bicluster b;
    for (Index i = 0; i < row_block; ++i) b.rows.push_back(k * row_block + i);
    IndexSet cols;
    for (Index j = 0; j < col_block; ++j) cols.push_back(k * col_block + j);
    b.cols = {cols, cols};
    truth.biclusters.push_back(std::move(b));
  }
  return {MultiViewData(std::move(views)), std::move(truth)};
}

}  // namespace issvd
