// Python bindings for the core operations: generators, fitting, metrics.

#include "issvd/core_types.hpp"
#include "issvd/io.hpp"
#include "issvd/issvd.hpp"
#include "issvd/metrics.hpp"
#include "issvd/svd_engine.hpp"
#include "issvd/synthgen.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace issvd;

namespace {

MultiViewData views_from_list(const std::vector<Eigen::MatrixXd>& views) {
  return MultiViewData(views);
}

FitConfig config_from_kwargs(int k_max, double variance_threshold, double pceru,
                             std::vector<double> pcerv, double pi_min, double pi_max,
                             double subsample_fraction, int n_subsamples, bool pointwise,
                             const std::string& standardize, bool row_overlap, bool col_overlap,
                             double merr, int max_iters, std::uint64_t seed) {
  FitConfig cfg;
  cfg.k_max = k_max;
  cfg.variance_threshold = variance_threshold;
  cfg.pceru = pceru;
  cfg.pcerv = std::move(pcerv);
  cfg.pi_min = pi_min;
  cfg.pi_max = pi_max;
  cfg.subsample_fraction = subsample_fraction;
  cfg.n_subsamples = n_subsamples;
  cfg.pointwise = pointwise;
  cfg.standardize = parse_standardize(standardize);
  cfg.row_overlap = row_overlap;
  cfg.col_overlap = col_overlap;
  cfg.merr = merr;
  cfg.max_iters = max_iters;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Integrative sparse SVD biclustering with stability selection";

  py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
  py::register_exception<numeric_error>(m, "NumericError", PyExc_ArithmeticError);

  py::class_<FitConfig>(m, "FitConfig")
      .def(py::init(&config_from_kwargs), py::kw_only(), py::arg("k_max") = 5,
           py::arg("variance_threshold") = 0.9, py::arg("pceru") = 0.1,
           py::arg("pcerv") = std::vector<double>{}, py::arg("pi_min") = 0.6,
           py::arg("pi_max") = 0.9, py::arg("subsample_fraction") = 0.5,
           py::arg("n_subsamples") = 100, py::arg("pointwise") = true,
           py::arg("standardize") = "none", py::arg("row_overlap") = false,
           py::arg("col_overlap") = false, py::arg("merr") = 1e-4, py::arg("max_iters") = 100,
           py::arg("seed") = 0)
      .def_readwrite("k_max", &FitConfig::k_max)
      .def_readwrite("variance_threshold", &FitConfig::variance_threshold)
      .def_readwrite("pceru", &FitConfig::pceru)
      .def_readwrite("pcerv", &FitConfig::pcerv)
      .def_readwrite("pi_min", &FitConfig::pi_min)
      .def_readwrite("pi_max", &FitConfig::pi_max)
      .def_readwrite("subsample_fraction", &FitConfig::subsample_fraction)
      .def_readwrite("n_subsamples", &FitConfig::n_subsamples)
      .def_readwrite("pointwise", &FitConfig::pointwise)
      .def_readwrite("row_overlap", &FitConfig::row_overlap)
      .def_readwrite("col_overlap", &FitConfig::col_overlap)
      .def_readwrite("merr", &FitConfig::merr)
      .def_readwrite("max_iters", &FitConfig::max_iters)
      .def_readwrite("seed", &FitConfig::seed);

  py::class_<SparseLayer>(m, "SparseLayer")
      .def_readonly("u", &SparseLayer::u)
      .def_readonly("v", &SparseLayer::v)
      .def_readonly("s", &SparseLayer::s)
      .def_readonly("stable_rows", &SparseLayer::stable_rows)
      .def_readonly("stable_cols", &SparseLayer::stable_cols)
      .def_readonly("converged", &SparseLayer::converged)
      .def_readonly("iterations", &SparseLayer::iterations);

  py::class_<BiclusterModel>(m, "BiclusterModel")
      .def_readonly("layers", &BiclusterModel::layers)
      .def_readonly("row_membership", &BiclusterModel::row_membership)
      .def_readonly("col_membership", &BiclusterModel::col_membership)
      .def_readonly("k_detected", &BiclusterModel::k_detected);

  py::class_<Bicluster>(m, "Bicluster")
      .def(py::init([](IndexSet rows, std::vector<IndexSet> cols) {
             Bicluster b;
             b.rows = std::move(rows);
             b.cols = std::move(cols);
             return b;
           }),
           py::arg("rows"), py::arg("cols"))
      .def_readwrite("rows", &Bicluster::rows)
      .def_readwrite("cols", &Bicluster::cols);

  py::class_<GroundTruth>(m, "GroundTruth")
      .def_readonly("biclusters", &GroundTruth::biclusters)
      .def_readonly("noise_sigma", &GroundTruth::noise_sigma)
      .def_readonly("scalar", &GroundTruth::scalar)
      .def_readonly("scenario", &GroundTruth::scenario);

  py::class_<MetricsReport>(m, "MetricsReport")
      .def_readonly("relevance", &MetricsReport::relevance)
      .def_readonly("recovery", &MetricsReport::recovery)
      .def_readonly("f_score", &MetricsReport::f_score)
      .def_readonly("fp_rate", &MetricsReport::fp_rate)
      .def_readonly("fn_rate", &MetricsReport::fn_rate)
      .def_readonly("unclustered_count", &MetricsReport::unclustered_count)
      .def("__repr__", [](const MetricsReport& r) {
        return "MetricsReport(relevance=" + std::to_string(r.relevance) +
               ", recovery=" + std::to_string(r.recovery) + ", f_score=" + std::to_string(r.f_score) +
               ")";
      });

  m.def(
      "fit",
      [](const std::vector<Eigen::MatrixXd>& views, const FitConfig& cfg) {
        return fit(views_from_list(views), cfg);
      },
      py::arg("views"), py::arg("config") = FitConfig{},
      "Extract stability-selected rank-one layers from sample-aligned views.");

  m.def(
      "assign_unclustered",
      [](const BiclusterModel& model, const std::vector<Eigen::MatrixXd>& views) {
        return assign_unclustered(model, views_from_list(views));
      },
      py::arg("model"), py::arg("views"),
      "Assign every unclustered sample to its best-correlated layer.");

  m.def(
      "select_num_biclusters",
      [](const std::vector<Eigen::MatrixXd>& views, double threshold, int k_user) {
        return select_num_biclusters(views_from_list(views), threshold, k_user);
      },
      py::arg("views"), py::arg("variance_threshold") = 0.9, py::arg("k_user") = 5);

  m.def("soft_threshold", &soft_threshold, py::arg("x"), py::arg("lam"));
  m.def(
      "leading_triplet",
      [](const Eigen::MatrixXd& X) {
        SvdTriplet t = leading_triplet(X);
        return py::make_tuple(t.s, t.u, t.v);
      },
      py::arg("X"), "Dominant singular triplet (s, u, v).");
  m.def("deflate", &deflate, py::arg("X"), py::arg("s"), py::arg("u"), py::arg("v"));
  m.def("proportions_of_variation", &proportions_of_variation, py::arg("X"));

  m.def(
      "generate_scenario1",
      [](int case_id, double scalar, double sigma, std::uint64_t seed) {
        Dataset ds = generate_scenario1(case_id, scalar, sigma, seed);
        return py::make_tuple(ds.data.views(), ds.truth);
      },
      py::arg("case_id") = 1, py::arg("scalar") = 1.0, py::arg("sigma") = 0.1, py::arg("seed") = 0);
  m.def(
      "generate_scenario2",
      [](double sigma, std::uint64_t seed) {
        Dataset ds = generate_scenario2(sigma, seed);
        return py::make_tuple(ds.data.views(), ds.truth);
      },
      py::arg("sigma") = 0.1, py::arg("seed") = 0);
  m.def(
      "generate_outlier_scenario",
      [](std::uint64_t seed) {
        Dataset ds = generate_outlier_scenario(seed);
        return py::make_tuple(ds.data.views(), ds.truth);
      },
      py::arg("seed") = 0);

  m.def("jaccard", &jaccard, py::arg("a"), py::arg("b"));
  m.def("relevance", &relevance, py::arg("est"), py::arg("truth"));
  m.def("recovery", &recovery, py::arg("est"), py::arg("truth"));
  m.def("f_score", &f_score, py::arg("relevance"), py::arg("recovery"));
  m.def("fp_fn_rates", &fp_fn_rates, py::arg("est"), py::arg("truth"));
  m.def("count_unclustered", &count_unclustered, py::arg("model"));
  m.def("score_model", &score_model, py::arg("model"), py::arg("truth"),
        "All quality metrics of a fitted model against ground-truth biclusters.");
  m.def("model_biclusters", &model_biclusters, py::arg("model"));
}
