#include "issvd/io.hpp"

#include "issvd/issvd.hpp"
#include "issvd/metrics.hpp"
#include "issvd/synthgen.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace issvd;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("issvd_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

}  // namespace

TEST_CASE("load_views reads comma and tab files") {
  TempDir dir;
  write_text_file(dir.file("a.csv"), "1,2\n3,4\n");
  write_text_file(dir.file("b.tsv"), "5\t6\t7\n8\t9\t10\n");
  MultiViewData data = load_views({dir.file("a.csv"), dir.file("b.tsv")});
  CHECK(data.n_views() == 2);
  CHECK(data.n_samples() == 2);
  CHECK(data.view(0)(1, 0) == 3.0);
  CHECK(data.view(1)(0, 2) == 7.0);
}

TEST_CASE("load_views error reporting names file, line and column") {
  TempDir dir;
  write_text_file(dir.file("bad.csv"), "1,2\n3,x\n");
  try {
    load_views({dir.file("bad.csv")});
    FAIL("expected input_error");
  } catch (const input_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("bad.csv") != std::string::npos);
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("column 2") != std::string::npos);
  }

  write_text_file(dir.file("ragged.csv"), "1,2\n3\n");
  CHECK_THROWS_AS(load_views({dir.file("ragged.csv")}), input_error);

  write_text_file(dir.file("a.csv"), "1,2\n3,4\n");
  write_text_file(dir.file("short.csv"), "1,2\n");
  try {
    load_views({dir.file("a.csv"), dir.file("short.csv")});
    FAIL("expected input_error");
  } catch (const input_error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("a.csv") != std::string::npos);
    CHECK(msg.find("short.csv") != std::string::npos);
  }
}

TEST_CASE("row labels align views by label order") {
  TempDir dir;
  TableOptions opts;
  opts.header = true;
  opts.row_labels = true;
  write_text_file(dir.file("a.csv"), "id,v0\ns1,1\ns2,2\n");
  write_text_file(dir.file("b.csv"), "id,v0\ns2,20\ns1,10\n");
  MultiViewData data = load_views({dir.file("a.csv"), dir.file("b.csv")}, opts);
  // view b reordered to a's label order
  CHECK(data.view(1)(0, 0) == 10.0);
  CHECK(data.view(1)(1, 0) == 20.0);
  CHECK(data.sample_ids() == std::vector<std::string>{"s1", "s2"});

  write_text_file(dir.file("c.csv"), "id,v0\ns9,1\ns1,2\n");
  CHECK_THROWS_AS(load_views({dir.file("a.csv"), dir.file("c.csv")}, opts), input_error);
}

TEST_CASE("save and load round-trip values bit exactly") {
  TempDir dir;
  Eigen::MatrixXd a = testutil::random_matrix(12, 7, 1234);
  a(3, 4) = 1.0 / 3.0;
  a(0, 0) = 1e-17;
  a(5, 2) = -2.7182818284590452e8;
  Eigen::MatrixXd b = testutil::random_matrix(12, 3, 4321);
  MultiViewData original({a, b});

  SUBCASE("plain") {
    save_views(original, {dir.file("v1.csv"), dir.file("v2.csv")});
    MultiViewData loaded = load_views({dir.file("v1.csv"), dir.file("v2.csv")});
    CHECK(loaded.view(0) == original.view(0));
    CHECK(loaded.view(1) == original.view(1));
  }
  SUBCASE("with header and labels") {
    TableOptions opts;
    opts.header = true;
    opts.row_labels = true;
    save_views(original, {dir.file("v1.csv"), dir.file("v2.csv")}, opts);
    MultiViewData loaded = load_views({dir.file("v1.csv"), dir.file("v2.csv")}, opts);
    CHECK(loaded.view(0) == original.view(0));
    CHECK(loaded.view(1) == original.view(1));
  }
}

TEST_CASE("result document round trip and version checking") {
  Dataset ds = generate_scenario2(0.1, 9);
  FitConfig cfg;
  cfg.seed = 9;
  BiclusterModel model = fit(ds.data, cfg);
  const std::string doc =
      write_result_document(model, cfg, ds.data.n_samples(), ds.data.dims(), 1.25);

  FitResultDoc parsed = read_result_document(doc);
  CHECK(parsed.k_detected == model.k_detected);
  CHECK(parsed.n == 200);
  CHECK(parsed.dims == std::vector<Index>{1000, 1000});
  REQUIRE(parsed.biclusters.size() == model.layers.size());
  for (std::size_t k = 0; k < model.layers.size(); ++k) {
    CHECK(parsed.biclusters[k].rows == model.layers[k].stable_rows);
    CHECK(parsed.biclusters[k].cols == model.layers[k].stable_cols);
  }
  CHECK(parsed.row_membership == model.row_membership);

  // tampered version is rejected
  std::string bumped = doc;
  const auto pos = bumped.find("\"schema_version\": 1");
  REQUIRE(pos != std::string::npos);
  bumped.replace(pos, 19, "\"schema_version\": 2");
  CHECK_THROWS_AS(read_result_document(bumped), input_error);
  CHECK_THROWS_AS(read_result_document("not json"), input_error);
  // wrong kind is rejected
  CHECK_THROWS_AS(read_truth_document(doc), input_error);
}

TEST_CASE("truth and metrics documents round trip") {
  Dataset ds = generate_scenario1(1, 2.0, 0.3, 4);
  const std::string doc = write_truth_document(ds.truth, ds.data.n_samples(), ds.data.dims());
  TruthDoc parsed = read_truth_document(doc);
  CHECK(parsed.scenario == "scenario1_case1");
  CHECK(parsed.scalar == 2.0);
  CHECK(parsed.sigma == 0.3);
  REQUIRE(parsed.biclusters.size() == 4);
  for (int k = 0; k < 4; ++k) {
    CHECK(parsed.biclusters[static_cast<std::size_t>(k)].rows ==
          ds.truth.biclusters[static_cast<std::size_t>(k)].rows);
  }

  MetricsReport r;
  r.relevance = 0.7;
  r.recovery = 0.9;
  r.f_score = f_score(0.7, 0.9);
  r.fp_rate = 0.12;
  r.fn_rate = 0.05;
  r.unclustered_count = 3;
  MetricsReport back = read_metrics_document(write_metrics_document(r));
  CHECK(back.relevance == r.relevance);
  CHECK(back.recovery == r.recovery);
  CHECK(back.f_score == r.f_score);
  CHECK(back.fp_rate == r.fp_rate);
  CHECK(back.fn_rate == r.fn_rate);
  CHECK(back.unclustered_count == 3);
}

TEST_CASE("simulate-to-files round trip reproduces the in-memory fit") {
  TempDir dir;
  Dataset ds = generate_scenario2(0.2, 314);
  save_views(ds.data, {dir.file("v1.csv"), dir.file("v2.csv")});
  MultiViewData loaded = load_views({dir.file("v1.csv"), dir.file("v2.csv")});
  REQUIRE(loaded.view(0) == ds.data.view(0));
  REQUIRE(loaded.view(1) == ds.data.view(1));

  FitConfig cfg;
  cfg.seed = 314;
  BiclusterModel from_memory = fit(ds.data, cfg);
  BiclusterModel from_files = fit(loaded, cfg);
  REQUIRE(from_memory.k_detected == from_files.k_detected);
  CHECK(from_memory.row_membership == from_files.row_membership);
  for (std::size_t k = 0; k < from_memory.layers.size(); ++k) {
    CHECK(from_memory.layers[k].u == from_files.layers[k].u);
    CHECK(from_memory.layers[k].stable_rows == from_files.layers[k].stable_rows);
  }
}
