// Command line front end: simulate | bicluster | evaluate | benchmark.

#include "issvd/io.hpp"
#include "issvd/issvd.hpp"
#include "issvd/metrics.hpp"
#include "issvd/rng.hpp"
#include "issvd/synthgen.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

using namespace issvd;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

struct FitFlags {
  FitConfig config;
  std::vector<double> ssthr{0.6, 0.9};
  std::string standr = "none";
  bool rows_nc = true;  // magnitude-based selection; accepted for provenance
  bool cols_nc = true;

  void finalize() {
    if (ssthr.size() != 2) throw input_error("ssthr expects two values: min max");
    config.pi_min = ssthr[0];
    config.pi_max = ssthr[1];
    config.standardize = parse_standardize(standr);
  }
};

void add_fit_flags(CLI::App* cmd, FitFlags& flags) {
  cmd->add_flag("--pointwise,!--no-pointwise", flags.config.pointwise,
                "use pointwise error control (default) or the full stability path");
  cmd->add_option("--steps", flags.config.n_subsamples, "number of subsamples per selection");
  cmd->add_option("--size", flags.config.subsample_fraction, "subsample fraction in (0,1)");
  cmd->add_option("--ssthr", flags.ssthr, "stability threshold range, two values in (0.5,1]")
      ->expected(2);
  cmd->add_option("--nbicluster", flags.config.k_max, "maximum number of biclusters");
  cmd->add_option("--vthr", flags.config.variance_threshold,
                  "cumulative singular-value share used to pick the layer budget");
  cmd->add_option("--pceru", flags.config.pceru, "per-comparison error rate for samples");
  cmd->add_option("--pcerv", flags.config.pcerv, "per-comparison error rates per view");
  cmd->add_option("--merr", flags.config.merr, "convergence tolerance");
  cmd->add_option("--iters", flags.config.max_iters, "maximum alternations per layer");
  cmd->add_option("--standr", flags.standr,
                  "standardization: none|center|scale|center_scale|frobenius");
  cmd->add_flag("--rows_nc,!--no-rows_nc", flags.rows_nc,
                "allow negatively correlated rows (selection is magnitude-based)");
  cmd->add_flag("--cols_nc,!--no-cols_nc", flags.cols_nc,
                "allow negatively correlated columns (selection is magnitude-based)");
  cmd->add_flag("--row-overlap", flags.config.row_overlap, "allow layers to share rows");
  cmd->add_flag("--col-overlap", flags.config.col_overlap, "allow layers to share columns");
  cmd->add_option("--seed", flags.config.seed, "master RNG seed");
  cmd->add_option("--grid", flags.config.fullpath_grid, "lambda grid size for the full path");
}

Dataset generate(const std::string& scenario, int case_id, double scalar, double sigma,
                 std::uint64_t seed) {
  if (scenario == "1") return generate_scenario1(case_id, scalar, sigma, seed);
  if (scenario == "2") return generate_scenario2(sigma, seed);
  if (scenario == "outlier") return generate_outlier_scenario(seed);
  throw input_error("unknown scenario '" + scenario + "' (expected 1, 2 or outlier)");
}

int run_simulate(const std::string& scenario, int case_id, double scalar, double sigma,
                 std::uint64_t seed, const std::string& out_dir, const TableOptions& table_opts) {
  Dataset ds = generate(scenario, case_id, scalar, sigma, seed);
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> paths;
  for (int d = 0; d < ds.data.n_views(); ++d) {
    paths.push_back((std::filesystem::path(out_dir) / ("view" + std::to_string(d + 1) + ".csv")).string());
  }
  save_views(ds.data, paths, table_opts);
  const std::string truth_path = (std::filesystem::path(out_dir) / "truth.json").string();
  write_text_file(truth_path, write_truth_document(ds.truth, ds.data.n_samples(), ds.data.dims()));
  std::cout << "wrote " << paths.size() << " view files and " << truth_path << "\n";
  return kExitOk;
}

int run_bicluster(const std::vector<std::string>& view_paths, const TableOptions& table_opts,
                  FitFlags& flags, const std::string& out_path, bool assign) {
  flags.finalize();
  MultiViewData data = load_views(view_paths, table_opts);
  const auto start = std::chrono::steady_clock::now();
  BiclusterModel model = fit(data, flags.config);
  if (assign) model = assign_unclustered(model, data);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string doc =
      write_result_document(model, flags.config, data.n_samples(), data.dims(), wall);
  if (out_path.empty()) {
    std::cout << doc;
  } else {
    write_text_file(out_path, doc);
    std::cout << "detected " << model.k_detected << " bicluster(s) in " << fmt(wall) << " s; wrote "
              << out_path << "\n";
  }
  return kExitOk;
}

int run_evaluate(const std::string& result_path, const std::string& truth_path,
                 const std::string& out_path) {
  FitResultDoc result = read_result_document(read_text_file(result_path));
  TruthDoc truth = read_truth_document(read_text_file(truth_path));
  if (result.n != truth.n || result.dims != truth.dims) {
    throw input_error("result and truth documents describe different data shapes");
  }
  MetricsReport report;
  report.relevance = relevance(result.biclusters, truth.biclusters);
  report.recovery = recovery(result.biclusters, truth.biclusters);
  report.f_score = f_score(report.relevance, report.recovery);
  const auto rates = fp_fn_rates(result.biclusters, truth.biclusters);
  report.fp_rate = rates.first;
  report.fn_rate = rates.second;
  report.unclustered_count = 0;
  for (Index i = 0; i < result.row_membership.size(); ++i) {
    if (result.row_membership(i) == 0) ++report.unclustered_count;
  }
  const std::string doc = write_metrics_document(report);
  std::cout << doc;
  if (!out_path.empty()) write_text_file(out_path, doc);
  return kExitOk;
}

struct BenchCell {
  std::string scenario;
  int case_id = 1;
  double scalar = 1.0;
  double sigma = 0.1;
  std::string tag;
};

struct BenchRow {
  MetricsReport report;
  int detected = 0;
  double seconds = 0.0;
};

int run_benchmark(const std::string& scenario, int case_id, std::vector<double> scalars,
                  std::vector<double> sigmas, int replicates, std::uint64_t seed_base, int threads,
                  FitFlags& flags, const std::string& out_dir) {
  flags.finalize();
  if (replicates < 0) throw input_error("replicates must be non-negative");
  if (scalars.empty()) scalars = {1.0};
  if (sigmas.empty()) sigmas = {0.1};

  std::vector<BenchCell> cells;
  if (scenario == "1") {
    for (double sc : scalars) {
      for (double sg : sigmas) {
        BenchCell c{scenario, case_id, sc, sg, {}};
        std::ostringstream tag;
        tag << "scenario=1,case=" << case_id << ",scalar=" << fmt(sc) << ",sigma=" << fmt(sg);
        c.tag = tag.str();
        cells.push_back(c);
      }
    }
  } else if (scenario == "2") {
    for (double sg : sigmas) {
      BenchCell c{scenario, case_id, 1.0, sg, "scenario=2,sigma=" + fmt(sg)};
      cells.push_back(c);
    }
  } else if (scenario == "outlier") {
    cells.push_back({scenario, case_id, 1.0, 0.0, "scenario=outlier"});
  } else {
    throw input_error("unknown scenario '" + scenario + "'");
  }

  if (const char* env = std::getenv("ISSVD_THREADS")) {
    threads = std::max(1, std::atoi(env));
  }
  threads = std::max(1, threads);

  // one slot per (cell, replicate); workers fill slots keyed by derived seeds
  std::vector<std::vector<BenchRow>> rows(cells.size(), std::vector<BenchRow>(replicates));
  std::vector<std::pair<std::size_t, int>> jobs;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (int r = 0; r < replicates; ++r) jobs.emplace_back(c, r);
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      const auto [c, r] = jobs[j];
      const BenchCell& cell = cells[c];
      const std::uint64_t seed =
          rng::derive(rng::hash_bytes(seed_base, cell.tag), {rng::kBenchmark, static_cast<std::uint64_t>(r)});
      Dataset ds = generate(cell.scenario, cell.case_id, cell.scalar, cell.sigma, seed);
      FitConfig cfg = flags.config;
      cfg.seed = seed;
      const auto start = std::chrono::steady_clock::now();
      BiclusterModel model = fit(ds.data, cfg);
      BenchRow row;
      row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      row.report = score_model(model, ds.truth.biclusters);
      row.detected = model.k_detected;
      rows[c][static_cast<std::size_t>(r)] = row;
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::filesystem::create_directories(out_dir);
  std::ostringstream raw;
  raw << "scenario,case,scalar,sigma,replicate,seed,detected,relevance,recovery,f_score,fp_rate,"
         "fn_rate,unclustered\n";
  std::ostringstream summary;
  summary << "scenario,case,scalar,sigma,replicates,relevance_mean,relevance_sd,recovery_mean,"
             "recovery_sd,f_score_mean,f_score_sd,fp_mean,fp_sd,fn_mean,fn_sd,unclustered_mean,"
             "unclustered_sd,detected_mean\n";
  double fit_seconds = 0.0;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const BenchCell& cell = cells[c];
    std::vector<double> rel, rec, f, fp, fn, unc, det;
    for (int r = 0; r < replicates; ++r) {
      const BenchRow& row = rows[c][static_cast<std::size_t>(r)];
      const std::uint64_t seed =
          rng::derive(rng::hash_bytes(seed_base, cell.tag), {rng::kBenchmark, static_cast<std::uint64_t>(r)});
      raw << cell.scenario << ',' << cell.case_id << ',' << fmt(cell.scalar) << ','
          << fmt(cell.sigma) << ',' << r << ',' << seed << ',' << row.detected << ','
          << fmt(row.report.relevance) << ',' << fmt(row.report.recovery) << ','
          << fmt(row.report.f_score) << ',' << fmt(row.report.fp_rate) << ','
          << fmt(row.report.fn_rate) << ',' << row.report.unclustered_count << '\n';
      rel.push_back(row.report.relevance);
      rec.push_back(row.report.recovery);
      f.push_back(row.report.f_score);
      fp.push_back(row.report.fp_rate);
      fn.push_back(row.report.fn_rate);
      unc.push_back(row.report.unclustered_count);
      det.push_back(row.detected);
      fit_seconds += row.seconds;
    }
    auto mean = [](const std::vector<double>& x) {
      if (x.empty()) return 0.0;
      double s = 0;
      for (double v : x) s += v;
      return s / static_cast<double>(x.size());
    };
    auto sd = [&](const std::vector<double>& x) {
      if (x.size() < 2) return 0.0;
      const double m = mean(x);
      double s = 0;
      for (double v : x) s += (v - m) * (v - m);
      return std::sqrt(s / static_cast<double>(x.size() - 1));
    };
    if (replicates > 0) {
      summary << cell.scenario << ',' << cell.case_id << ',' << fmt(cell.scalar) << ','
              << fmt(cell.sigma) << ',' << replicates << ',' << fmt(mean(rel)) << ',' << fmt(sd(rel))
              << ',' << fmt(mean(rec)) << ',' << fmt(sd(rec)) << ',' << fmt(mean(f)) << ','
              << fmt(sd(f)) << ',' << fmt(mean(fp)) << ',' << fmt(sd(fp)) << ',' << fmt(mean(fn))
              << ',' << fmt(sd(fn)) << ',' << fmt(mean(unc)) << ',' << fmt(sd(unc)) << ','
              << fmt(mean(det)) << '\n';
    }
  }
  write_text_file((std::filesystem::path(out_dir) / "summary.csv").string(), summary.str());
  write_text_file((std::filesystem::path(out_dir) / "replicates.csv").string(), raw.str());
  std::cout << "wrote " << (std::filesystem::path(out_dir) / "summary.csv").string() << " ("
            << cells.size() << " cells x " << replicates << " replicates, " << fmt(fit_seconds)
            << " s of fitting)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integrative sparse SVD biclustering for multi-view data"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "generate a synthetic multi-view dataset");
  std::string sim_scenario = "2";
  int sim_case = 1;
  double sim_scalar = 1.0, sim_sigma = 0.1;
  std::uint64_t sim_seed = 0;
  std::string sim_out = ".";
  bool sim_header = false, sim_labels = false;
  sim->add_option("--scenario", sim_scenario, "1, 2 or outlier")->required();
  sim->add_option("--case", sim_case, "scenario 1 case: 1, 2 or 3");
  sim->add_option("--scalar", sim_scalar, "scale factor for view 2 (scenario 1)");
  sim->add_option("--sigma", sim_sigma, "noise standard deviation");
  sim->add_option("--seed", sim_seed, "RNG seed");
  sim->add_option("--out-dir", sim_out, "output directory")->required();
  sim->add_flag("--header", sim_header, "write a header row");
  sim->add_flag("--row-labels", sim_labels, "write a row-label column");

  // bicluster
  auto* bic = app.add_subcommand("bicluster", "fit biclusters to delimited view files");
  std::vector<std::string> bic_views;
  std::string bic_out;
  bool bic_header = false, bic_labels = false, bic_assign = false;
  FitFlags bic_flags;
  bic->add_option("--views", bic_views, "one delimited matrix file per view")
      ->required()
      ->expected(-1);
  bic->add_flag("--header", bic_header, "files carry a header row");
  bic->add_flag("--row-labels", bic_labels, "files carry a row-label column");
  bic->add_option("--out", bic_out, "result file (default: stdout)");
  bic->add_flag("--assign-unclustered", bic_assign,
                "assign leftover samples to their best-correlated bicluster");
  add_fit_flags(bic, bic_flags);

  // evaluate
  auto* eva = app.add_subcommand("evaluate", "score a result document against a truth document");
  std::string eva_result, eva_truth, eva_out;
  eva->add_option("--result", eva_result, "result document")->required();
  eva->add_option("--truth", eva_truth, "truth document")->required();
  eva->add_option("--out", eva_out, "metrics file (default: stdout only)");

  // benchmark
  auto* ben = app.add_subcommand("benchmark", "generate-fit-evaluate over a scenario grid");
  std::string ben_scenario = "2";
  int ben_case = 1;
  std::vector<double> ben_scalars, ben_sigmas;
  int ben_replicates = 1, ben_threads = 1;
  std::uint64_t ben_seed = 0;
  std::string ben_out = ".";
  FitFlags ben_flags;
  ben->add_option("--scenario", ben_scenario, "1, 2 or outlier")->required();
  ben->add_option("--case", ben_case, "scenario 1 case");
  ben->add_option("--scalars", ben_scalars, "scalar grid (scenario 1)")->delimiter(',');
  ben->add_option("--sigmas", ben_sigmas, "noise grid")->delimiter(',');
  ben->add_option("--replicates", ben_replicates, "Monte Carlo replicates per cell")->required();
  ben->add_option("--seed-base", ben_seed, "base seed for replicate derivation");
  ben->add_option("--threads", ben_threads,
                  "parallel replicate workers (env ISSVD_THREADS overrides)");
  ben->add_option("--out-dir", ben_out, "output directory")->required();
  add_fit_flags(ben, ben_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (sim->parsed()) {
      TableOptions opts;
      opts.header = sim_header;
      opts.row_labels = sim_labels;
      return run_simulate(sim_scenario, sim_case, sim_scalar, sim_sigma, sim_seed, sim_out, opts);
    }
    if (bic->parsed()) {
      TableOptions opts;
      opts.header = bic_header;
      opts.row_labels = bic_labels;
      return run_bicluster(bic_views, opts, bic_flags, bic_out, bic_assign);
    }
    if (eva->parsed()) {
      return run_evaluate(eva_result, eva_truth, eva_out);
    }
    if (ben->parsed()) {
      return run_benchmark(ben_scenario, ben_case, ben_scalars, ben_sigmas, ben_replicates,
                           ben_seed, ben_threads, ben_flags, ben_out);
    }
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const numeric_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitOk;
}
