#include "issvd/metrics.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <random>

using namespace issvd;

namespace {

Bicluster make_bc(IndexSet rows, std::vector<IndexSet> cols) {
  Bicluster b;
  b.rows = std::move(rows);
  b.cols = std::move(cols);
  return b;
}

// random bicluster within n rows and per-view dims
Bicluster random_bc(std::mt19937_64& g, Index n, const std::vector<Index>& dims) {
  auto pick = [&g](Index m, Index count) {
    IndexSet out;
    for (Index i = 0; i < m; ++i) {
      if (g() % m < static_cast<std::uint64_t>(count)) out.push_back(i);
    }
    return out;
  };
  Bicluster b;
  b.rows = pick(n, n / 2);
  for (Index p : dims) b.cols.push_back(pick(p, p / 2));
  return b;
}

}  // namespace

TEST_CASE("jaccard examples") {
  Bicluster a = make_bc({0, 1}, {{0, 1}});
  Bicluster b = make_bc({1, 2}, {{0, 1}});
  CHECK(jaccard(a, a) == 1.0);
  CHECK(jaccard(a, b) == doctest::Approx(1.0 / 3.0));

  Bicluster disjoint = make_bc({5, 6}, {{0, 1}});
  CHECK(jaccard(a, disjoint) == 0.0);

  Bicluster empty;
  empty.cols = {{}};
  CHECK(jaccard(empty, empty) == 0.0);
}

TEST_CASE("jaccard agrees with explicit cell enumeration") {
  std::mt19937_64 g(10101);
  const std::vector<Index> dims{6, 4};
  for (int rep = 0; rep < 50; ++rep) {
    Bicluster a = random_bc(g, 8, dims);
    Bicluster b = random_bc(g, 8, dims);
    CHECK(jaccard(a, b) == doctest::Approx(testutil::jaccard_oracle(a, b, dims)).epsilon(1e-12));
    CHECK(jaccard(a, b) == jaccard(b, a));
    CHECK(jaccard(a, b) >= 0.0);
    CHECK(jaccard(a, b) <= 1.0);
  }
}

TEST_CASE("relevance and recovery") {
  std::vector<Bicluster> truth;
  for (int k = 0; k < 4; ++k) {
    truth.push_back(make_bc({k * 2, k * 2 + 1}, {{k * 3, k * 3 + 1, k * 3 + 2}}));
  }

  CHECK(relevance(truth, truth) == 1.0);
  CHECK(recovery(truth, truth) == 1.0);

  // one perfectly matching estimate: relevance 1, recovery 1/4
  std::vector<Bicluster> one{truth[2]};
  CHECK(relevance(one, truth) == 1.0);
  CHECK(recovery(one, truth) == doctest::Approx(0.25));

  CHECK(relevance({}, truth) == 0.0);

  // a duplicated perfect estimate leaves recovery unchanged
  std::vector<Bicluster> dup{truth[2], truth[2]};
  CHECK(recovery(dup, truth) == recovery(one, truth));
}

TEST_CASE("relevance/recovery equal the exhaustive double loop and are permutation invariant") {
  std::mt19937_64 g(777);
  const std::vector<Index> dims{5, 5};
  std::vector<Bicluster> est, truth;
  for (int i = 0; i < 2; ++i) est.push_back(random_bc(g, 9, dims));
  for (int i = 0; i < 3; ++i) truth.push_back(random_bc(g, 9, dims));

  double rel = 0.0;
  for (const auto& e : est) {
    double best = 0.0;
    for (const auto& t : truth) best = std::max(best, testutil::jaccard_oracle(e, t, dims));
    rel += best;
  }
  rel /= static_cast<double>(est.size());
  CHECK(relevance(est, truth) == doctest::Approx(rel).epsilon(1e-12));

  double rec = 0.0;
  for (const auto& t : truth) {
    double best = 0.0;
    for (const auto& e : est) best = std::max(best, testutil::jaccard_oracle(t, e, dims));
    rec += best;
  }
  rec /= static_cast<double>(truth.size());
  CHECK(recovery(est, truth) == doctest::Approx(rec).epsilon(1e-12));

  std::vector<Bicluster> est_p{est[1], est[0]};
  std::vector<Bicluster> truth_p{truth[2], truth[0], truth[1]};
  CHECK(relevance(est_p, truth_p) == doctest::Approx(relevance(est, truth)).epsilon(1e-12));
  CHECK(recovery(est_p, truth_p) == doctest::Approx(recovery(est, truth)).epsilon(1e-12));
}

TEST_CASE("f_score") {
  CHECK(f_score(0.3, 0.3) == doctest::Approx(0.3));
  CHECK(f_score(1.0, 0.0) == 0.0);
  CHECK(f_score(0.0, 0.0) == 0.0);
  CHECK(f_score(0.717, 0.895) == doctest::Approx(0.796).epsilon(2e-3));

  // harmonic mean never exceeds the arithmetic mean
  std::mt19937_64 g(31);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    const double r = unif(g), R = unif(g);
    const double f = f_score(r, R);
    CHECK(f >= 0.0);
    CHECK(f <= 0.5 * (r + R) + 1e-12);
  }
}

TEST_CASE("fp_fn_rates") {
  std::vector<Bicluster> truth{make_bc({0, 1, 2}, {{0, 1, 2, 3}}),
                               make_bc({5, 6}, {{8, 9}})};

  auto perfect = fp_fn_rates(truth, truth);
  CHECK(perfect.first == 0.0);
  CHECK(perfect.second == 0.0);

  auto nothing = fp_fn_rates({}, truth);
  CHECK(nothing.first == 0.0);
  CHECK(nothing.second == 1.0);

  CHECK_THROWS_AS(fp_fn_rates(truth, {}), input_error);

  // seeded two-bicluster case against explicit cell-set differences
  std::mt19937_64 g(555);
  const std::vector<Index> dims{10};
  std::vector<Bicluster> est{random_bc(g, 12, dims), random_bc(g, 12, dims)};
  std::vector<Bicluster> tr{random_bc(g, 12, dims), random_bc(g, 12, dims)};
  auto [fp, fn] = fp_fn_rates(est, tr);

  double truth_cells = 0.0;
  for (const auto& t : tr) truth_cells += static_cast<double>(testutil::enumerate_cells(t, dims).size());
  double fp_cells = 0.0, fn_cells = 0.0;
  std::vector<bool> matched(est.size(), false);
  for (const auto& t : tr) {
    std::size_t best = 0;
    double best_jac = -1.0;
    for (std::size_t j = 0; j < est.size(); ++j) {
      const double jac = testutil::jaccard_oracle(t, est[j], dims);
      if (jac > best_jac) {
        best_jac = jac;
        best = j;
      }
    }
    matched[best] = true;
    const auto tc = testutil::enumerate_cells(t, dims);
    const auto ec = testutil::enumerate_cells(est[best], dims);
    for (const auto& cell : ec) fp_cells += tc.count(cell) == 0 ? 1.0 : 0.0;
    for (const auto& cell : tc) fn_cells += ec.count(cell) == 0 ? 1.0 : 0.0;
  }
  for (std::size_t j = 0; j < est.size(); ++j) {
    if (!matched[j]) fp_cells += static_cast<double>(testutil::enumerate_cells(est[j], dims).size());
  }
  CHECK(fp == doctest::Approx(fp_cells / truth_cells).epsilon(1e-12));
  CHECK(fn == doctest::Approx(fn_cells / truth_cells).epsilon(1e-12));
}

TEST_CASE("count_unclustered") {
  BiclusterModel model;
  model.row_membership = Eigen::VectorXi::Zero(7);
  CHECK(count_unclustered(model) == 7);
  model.row_membership << 1, 1, 2, 0, 3, 0, 2;
  CHECK(count_unclustered(model) == 2);
  model.row_membership.setConstant(4);
  CHECK(count_unclustered(model) == 0);
}
