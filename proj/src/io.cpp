#include "issvd/io.hpp"

#include <json.hpp>

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace issvd {

using nlohmann::json;

namespace {

// shortest exact formatting: %.17g round-trips IEEE doubles
std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

char detect_delimiter(const std::string& line) {
  if (line.find('\t') != std::string::npos) return '\t';
  return ',';
}

std::vector<std::string> split_fields(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == delim) {
      out.push_back(field);
      field.clear();
    } else {
      field += c;
    }
  }
  out.push_back(field);
  return out;
}

struct ParsedTable {
  Eigen::MatrixXd values;
  std::vector<std::string> row_labels;
};

ParsedTable parse_table(const std::string& path, const TableOptions& opts) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  std::string line;
  char delim = opts.delimiter;
  std::size_t line_no = 0;
  std::size_t width = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (delim == '\0') delim = detect_delimiter(line);
    if (opts.header && !saw_header) {
      saw_header = true;
      continue;
    }
    std::vector<std::string> fields = split_fields(line, delim);
    std::size_t first = 0;
    if (opts.row_labels) {
      labels.push_back(fields.empty() ? "" : fields[0]);
      first = 1;
    }
    std::vector<double> row;
    row.reserve(fields.size() - first);
    for (std::size_t f = first; f < fields.size(); ++f) {
      const std::string& tok = fields[f];
      errno = 0;
      char* end = nullptr;
      const double value = std::strtod(tok.c_str(), &end);
      if (tok.empty() || end != tok.c_str() + tok.size() || errno == ERANGE) {
        std::ostringstream msg;
        msg << path << ": line " << line_no << ", column " << (f + 1) << ": non-numeric cell '"
            << tok << "'";
        throw input_error(msg.str());
      }
      row.push_back(value);
    }
    if (width == 0) {
      width = row.size();
    } else if (row.size() != width) {
      std::ostringstream msg;
      msg << path << ": line " << line_no << ": expected " << width << " values, found "
          << row.size();
      throw input_error(msg.str());
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw input_error(path + ": no data rows");
  ParsedTable table;
  table.values.resize(static_cast<Index>(rows.size()), static_cast<Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      table.values(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  table.row_labels = std::move(labels);
  return table;
}

json index_set_json(const IndexSet& s) {
  json out = json::array();
  for (Index i : s) out.push_back(static_cast<std::int64_t>(i));
  return out;
}

IndexSet index_set_from(const json& j) {
  IndexSet out;
  for (const auto& v : j) out.push_back(v.get<Index>());
  return out;
}

json membership_json(const Eigen::VectorXi& m) {
  json out = json::array();
  for (Index i = 0; i < m.size(); ++i) out.push_back(m(i));
  return out;
}

Eigen::VectorXi membership_from(const json& j) {
  Eigen::VectorXi out(static_cast<Index>(j.size()));
  Index i = 0;
  for (const auto& v : j) out(i++) = v.get<int>();
  return out;
}

void check_version(const json& doc, const std::string& kind) {
  if (!doc.contains("schema_version") || !doc.contains("kind")) {
    throw input_error("document is missing schema fields");
  }
  if (doc.at("kind").get<std::string>() != kind) {
    throw input_error("expected a '" + kind + "' document, found '" +
                      doc.at("kind").get<std::string>() + "'");
  }
  const int version = doc.at("schema_version").get<int>();
  if (version != kSchemaVersion) {
    throw input_error("unsupported schema version " + std::to_string(version) + " for '" + kind +
                      "' (expected " + std::to_string(kSchemaVersion) + ")");
  }
}

}  // namespace

MultiViewData load_views(const std::vector<std::string>& paths, const TableOptions& opts) {
  if (paths.empty()) throw input_error("load_views: no files given");
  std::vector<ParsedTable> tables;
  tables.reserve(paths.size());
  for (const auto& p : paths) tables.push_back(parse_table(p, opts));

  const Index n = tables[0].values.rows();
  for (std::size_t d = 1; d < tables.size(); ++d) {
    if (tables[d].values.rows() != n) {
      std::ostringstream msg;
      msg << "row count mismatch: '" << paths[0] << "' has " << n << " rows but '" << paths[d]
          << "' has " << tables[d].values.rows();
      throw input_error(msg.str());
    }
  }

  std::vector<Eigen::MatrixXd> views;
  views.reserve(tables.size());
  if (opts.row_labels) {
    // align every view to the first file's label order
    const std::vector<std::string>& ref = tables[0].row_labels;
    for (std::size_t d = 0; d < tables.size(); ++d) {
      std::unordered_map<std::string, Index> pos;
      for (Index i = 0; i < static_cast<Index>(tables[d].row_labels.size()); ++i) {
        if (!pos.emplace(tables[d].row_labels[static_cast<std::size_t>(i)], i).second) {
          throw input_error(paths[d] + ": duplicate row label '" +
                            tables[d].row_labels[static_cast<std::size_t>(i)] + "'");
        }
      }
      Eigen::MatrixXd aligned(n, tables[d].values.cols());
      for (Index i = 0; i < n; ++i) {
        auto it = pos.find(ref[static_cast<std::size_t>(i)]);
        if (it == pos.end()) {
          throw input_error(paths[d] + ": row label '" + ref[static_cast<std::size_t>(i)] +
                            "' from '" + paths[0] + "' is missing");
        }
        aligned.row(i) = tables[d].values.row(it->second);
      }
      views.push_back(std::move(aligned));
    }
    return MultiViewData(std::move(views), ref);
  }
  for (auto& t : tables) views.push_back(std::move(t.values));
  return MultiViewData(std::move(views));
}

void save_views(const MultiViewData& data, const std::vector<std::string>& paths,
                const TableOptions& opts) {
  if (static_cast<int>(paths.size()) != data.n_views()) {
    throw input_error("save_views: one path per view is required");
  }
  const char delim = opts.delimiter == '\0' ? ',' : opts.delimiter;
  for (int d = 0; d < data.n_views(); ++d) {
    std::ofstream out(paths[static_cast<std::size_t>(d)]);
    if (!out) throw input_error("cannot write '" + paths[static_cast<std::size_t>(d)] + "'");
    const Eigen::MatrixXd& X = data.view(d);
    if (opts.header) {
      if (opts.row_labels) out << "id" << delim;
      for (Index j = 0; j < X.cols(); ++j) {
        if (j > 0) out << delim;
        out << "v" << j;
      }
      out << '\n';
    }
    for (Index i = 0; i < X.rows(); ++i) {
      if (opts.row_labels) {
        const std::string label = data.sample_ids().empty()
                                      ? "s" + std::to_string(i)
                                      : data.sample_ids()[static_cast<std::size_t>(i)];
        out << label << delim;
      }
      for (Index j = 0; j < X.cols(); ++j) {
        if (j > 0) out << delim;
        out << format_double(X(i, j));
      }
      out << '\n';
    }
  }
}

std::string write_result_document(const BiclusterModel& model, const FitConfig& config, Index n,
                                  const std::vector<Index>& dims, double wall_time_s) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = "issvd.result";
  json cfg;
  cfg["nbicluster"] = config.k_max;
  cfg["vthr"] = config.variance_threshold;
  cfg["pceru"] = config.pceru;
  json pcerv = json::array();
  for (std::size_t d = 0; d < dims.size(); ++d) pcerv.push_back(config.pcer_v(static_cast<int>(d)));
  cfg["pcerv"] = pcerv;
  cfg["ssthr"] = {config.pi_min, config.pi_max};
  cfg["size"] = config.subsample_fraction;
  cfg["steps"] = config.n_subsamples;
  cfg["pointwise"] = config.pointwise;
  cfg["standr"] = to_string(config.standardize);
  cfg["row_overlap"] = config.row_overlap;
  cfg["col_overlap"] = config.col_overlap;
  cfg["merr"] = config.merr;
  cfg["iters"] = config.max_iters;
  cfg["seed"] = config.seed;
  doc["config"] = cfg;
  doc["n"] = static_cast<std::int64_t>(n);
  json jdims = json::array();
  for (Index p : dims) jdims.push_back(static_cast<std::int64_t>(p));
  doc["dims"] = jdims;
  doc["k_detected"] = model.k_detected;
  json layers = json::array();
  for (const auto& layer : model.layers) {
    json jl;
    jl["rows"] = index_set_json(layer.stable_rows);
    json cols = json::array();
    for (const auto& c : layer.stable_cols) cols.push_back(index_set_json(c));
    jl["cols"] = cols;
    json s = json::array();
    for (double v : layer.s) s.push_back(v);
    jl["s"] = s;
    jl["converged"] = layer.converged;
    jl["iterations"] = layer.iterations;
    layers.push_back(std::move(jl));
  }
  doc["layers"] = layers;
  doc["row_membership"] = membership_json(model.row_membership);
  json cm = json::array();
  for (const auto& m : model.col_membership) cm.push_back(membership_json(m));
  doc["col_membership"] = cm;
  doc["wall_time_s"] = wall_time_s;
  return doc.dump(2) + "\n";
}

FitResultDoc read_result_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw input_error(std::string("result document is not valid JSON: ") + e.what());
  }
  check_version(doc, "issvd.result");
  FitResultDoc out;
  out.k_detected = doc.at("k_detected").get<int>();
  out.n = doc.at("n").get<Index>();
  for (const auto& d : doc.at("dims")) out.dims.push_back(d.get<Index>());
  for (const auto& jl : doc.at("layers")) {
    Bicluster b;
    b.rows = index_set_from(jl.at("rows"));
    for (const auto& c : jl.at("cols")) b.cols.push_back(index_set_from(c));
    out.biclusters.push_back(std::move(b));
  }
  out.row_membership = membership_from(doc.at("row_membership"));
  for (const auto& m : doc.at("col_membership")) out.col_membership.push_back(membership_from(m));
  return out;
}

std::string write_truth_document(const GroundTruth& truth, Index n, const std::vector<Index>& dims) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = "issvd.truth";
  doc["scenario"] = truth.scenario;
  doc["scalar"] = truth.scalar;
  doc["sigma"] = truth.noise_sigma;
  doc["n"] = static_cast<std::int64_t>(n);
  json jdims = json::array();
  for (Index p : dims) jdims.push_back(static_cast<std::int64_t>(p));
  doc["dims"] = jdims;
  json bics = json::array();
  for (const auto& b : truth.biclusters) {
    json jb;
    jb["rows"] = index_set_json(b.rows);
    json cols = json::array();
    for (const auto& c : b.cols) cols.push_back(index_set_json(c));
    jb["cols"] = cols;
    bics.push_back(std::move(jb));
  }
  doc["biclusters"] = bics;
  return doc.dump(2) + "\n";
}

TruthDoc read_truth_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw input_error(std::string("truth document is not valid JSON: ") + e.what());
  }
  check_version(doc, "issvd.truth");
  TruthDoc out;
  out.scenario = doc.at("scenario").get<std::string>();
  out.scalar = doc.at("scalar").get<double>();
  out.sigma = doc.at("sigma").get<double>();
  out.n = doc.at("n").get<Index>();
  for (const auto& d : doc.at("dims")) out.dims.push_back(d.get<Index>());
  for (const auto& jb : doc.at("biclusters")) {
    Bicluster b;
    b.rows = index_set_from(jb.at("rows"));
    for (const auto& c : jb.at("cols")) b.cols.push_back(index_set_from(c));
    out.biclusters.push_back(std::move(b));
  }
  return out;
}

std::string write_metrics_document(const MetricsReport& report) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = "issvd.metrics";
  doc["relevance"] = report.relevance;
  doc["recovery"] = report.recovery;
  doc["f_score"] = report.f_score;
  doc["fp_rate"] = report.fp_rate;
  doc["fn_rate"] = report.fn_rate;
  doc["unclustered"] = report.unclustered_count;
  return doc.dump(2) + "\n";
}

MetricsReport read_metrics_document(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw input_error(std::string("metrics document is not valid JSON: ") + e.what());
  }
  check_version(doc, "issvd.metrics");
  MetricsReport out;
  out.relevance = doc.at("relevance").get<double>();
  out.recovery = doc.at("recovery").get<double>();
  out.f_score = doc.at("f_score").get<double>();
  out.fp_rate = doc.at("fp_rate").get<double>();
  out.fn_rate = doc.at("fn_rate").get<double>();
  out.unclustered_count = doc.at("unclustered").get<int>();
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write '" + path + "'");
  out << text;
}

}  // namespace issvd
