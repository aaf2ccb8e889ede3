#pragma once

#include "issvd/core_types.hpp"

#include <utility>

namespace issvd {

struct GroundTruth {
  std::vector<Bicluster> biclusters;
  double noise_sigma = 0.0;
  double scalar = 1.0;
  std::string scenario;
};

struct Dataset {
  MultiViewData data;
  GroundTruth truth;
};

/// Two views built from planted rank-one layers with 60% of samples outside
/// any cluster. Cases 1-2: n=100, p=1000 per view, blocks 10x100; case 3:
/// n=500, p=10000, blocks 50x200. View 2 is multiplied by `scalar` after
/// noise is added.
Dataset generate_scenario1(int case_id, double scalar, double sigma, std::uint64_t seed);

/// Two views, n=200, p=1000 per view, four 50x100 biclusters covering every
/// sample exactly once.
Dataset generate_scenario2(double sigma, std::uint64_t seed);

/// Two block-diagonal integer views (four 50x250 blocks) with two constant
/// outlier rows in block 4; noise sd 0.1 (view 1) and 0.15 (view 2).
Dataset generate_outlier_scenario(std::uint64_t seed);

namespace detail {
/// Noiseless block matrix for one view of the outlier scenario.
Eigen::MatrixXd outlier_blocks(std::uint64_t seed, int view);
}  // namespace detail

}  // namespace issvd
