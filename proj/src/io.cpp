#include "blindrank/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "blindrank/errors.hpp"

namespace blindrank {

using nlohmann::json;

namespace {

std::ofstream open_out(const std::string& path) {
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
  }
  std::ofstream out(path, std::ios::binary);  // '\n' line endings everywhere
  if (!out) throw DataError("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open for reading: " + path);
  return in;
}

double parse_double(const std::string& field, const std::string& path) {
  double v = 0.0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw DataError("malformed numeric field '" + field + "' in " + path);
  }
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

json load_json_file(const std::string& path) {
  auto in = open_in(path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("malformed JSON in " + path + ": " + e.what());
  }
  return j;
}

std::string order_kind_name(OrderKind k) {
  return k == OrderKind::weak ? "weak" : "partial";
}

}  // namespace

std::string format_value(double v) {
  char buf[40];
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    std::snprintf(buf, sizeof(buf), "%.0f", v);
  } else {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
  }
  return buf;
}

void write_graph_csv(const Graph& g, const std::string& path) {
  auto out = open_out(path);
  out << "src,dst,weight\n";
  const Eigen::MatrixXd& a = g.adjacency();
  for (int i = 0; i < g.n(); ++i) {
    for (int j = i + 1; j < g.n(); ++j) {
      if (a(i, j) != 0.0) {
        out << (i + 1) << ',' << (j + 1) << ',' << format_value(a(i, j)) << '\n';
      }
    }
  }
}

void write_graph_sidecar(const Graph& g, const std::string& kind,
                         std::uint64_t seed, const std::string& params_json,
                         const std::string& path) {
  json j;
  j["n"] = g.n();
  j["kind"] = kind;
  j["seed"] = seed;
  j["params"] = params_json.empty() ? json::object() : json::parse(params_json);
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

Graph read_graph_csv(const std::string& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty graph file: " + path);
  if (split_csv_line(line) != std::vector<std::string>{"src", "dst", "weight"}) {
    throw DataError("graph CSV must start with header src,dst,weight: " + path);
  }
  struct Edge {
    int src, dst;
    double w;
  };
  std::vector<Edge> edges;
  int max_node = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 3) throw DataError("bad edge row in " + path);
    const int src = static_cast<int>(parse_double(fields[0], path));
    const int dst = static_cast<int>(parse_double(fields[1], path));
    const double w = parse_double(fields[2], path);
    if (src < 1 || dst < 1 || src == dst) {
      throw DataError("edge endpoints must be distinct 1-based ids: " + path);
    }
    edges.push_back({src, dst, w});
    max_node = std::max({max_node, src, dst});
  }
  // Node count comes from the sidecar when present, else from max id.
  int n = max_node;
  const std::string sidecar = path.substr(0, path.find_last_of('.')) + ".json";
  if (std::ifstream probe(sidecar); probe.good()) {
    const json j = load_json_file(sidecar);
    if (j.contains("n")) n = j["n"].get<int>();
  }
  if (n < 1) throw DataError("graph has no nodes: " + path);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : edges) {
    if (e.src > n || e.dst > n) throw DataError("edge id exceeds node count: " + path);
    a(e.src - 1, e.dst - 1) = e.w;
    a(e.dst - 1, e.src - 1) = e.w;
  }
  return Graph::from_adjacency(std::move(a));
}

void write_matrix_csv(const Eigen::MatrixXd& m, const std::string& path) {
  auto out = open_out(path);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << format_value(m(r, c));
    }
    out << '\n';
  }
}

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
  auto in = open_in(path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    std::vector<double> row;
    row.reserve(fields.size());
    for (const std::string& f : fields) row.push_back(parse_double(f, path));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw DataError("ragged rows in " + path);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw DataError("empty matrix file: " + path);
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
  }
  return m;
}

void write_vector_csv(const Eigen::VectorXd& v, const std::string& path) {
  auto out = open_out(path);
  for (Eigen::Index i = 0; i < v.size(); ++i) out << format_value(v(i)) << '\n';
}

Eigen::VectorXd read_vector_csv(const std::string& path) {
  const Eigen::MatrixXd m = read_matrix_csv(path);
  if (m.cols() != 1) throw DataError("expected a single-column file: " + path);
  return m.col(0);
}

void write_batch(const SignalBatch& b, const std::string& csv_path,
                 const std::string& sidecar_path) {
  write_matrix_csv(b.samples, csv_path);
  json j;
  j["m"] = b.m;
  j["n"] = static_cast<int>(b.samples.cols());
  j["noise_kind"] = to_string(b.noise_kind);
  j["seed"] = b.seed;
  j["filter_id"] = b.filter_id;
  j["bound_r"] = b.bound_r;
  auto out = open_out(sidecar_path);
  out << j.dump(2) << '\n';
}

SignalBatch read_batch(const std::string& csv_path,
                       const std::string& sidecar_path) {
  SignalBatch b;
  b.samples = read_matrix_csv(csv_path);
  if (!b.samples.allFinite()) throw DataError("batch has non-finite samples");
  const json j = load_json_file(sidecar_path);
  b.m = j.at("m").get<int>();
  if (b.m != b.samples.rows()) {
    throw DataError("batch sidecar m disagrees with CSV row count");
  }
  b.noise_kind = noise_kind_from_string(j.at("noise_kind").get<std::string>());
  b.seed = j.at("seed").get<std::uint64_t>();
  b.filter_id = j.value("filter_id", "");
  b.bound_r = j.value("bound_r", 0.0);
  return b;
}

GraphFilter filter_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed filter spec: ") + e.what());
  }
  const std::string type = j.value("type", "");
  if (type == "poly") {
    if (!j.contains("coeffs") || !j["coeffs"].is_array()) {
      throw ConfigError("poly filter spec needs a coeffs array");
    }
    return GraphFilter::polynomial(j["coeffs"].get<std::vector<double>>(),
                                   j.value("normalize", false));
  }
  if (type == "spectral") {
    return GraphFilter::spectral(j.value("name", ""));
  }
  throw ConfigError("filter spec type must be 'poly' or 'spectral'");
}

std::string filter_to_json(const GraphFilter& f) {
  json j;
  if (f.is_polynomial()) {
    j["type"] = "poly";
    j["coeffs"] = f.coeffs();
    if (f.normalized()) j["normalize"] = true;
  } else {
    j["type"] = "spectral";
    j["name"] = f.spectral_name();
  }
  return j.dump();
}

void write_ordering_json(const NodeOrdering& o, const std::string& path) {
  json j;
  j["n"] = o.n();
  j["kind"] = order_kind_name(o.kind());
  j["tau"] = o.tau();
  j["source"] = o.source();
  json rle = json::array();
  const auto& rel = o.relations();
  std::size_t i = 0;
  while (i < rel.size()) {
    std::size_t run = 1;
    while (i + run < rel.size() && rel[i + run] == rel[i]) ++run;
    rle.push_back(json::array({run, to_string(rel[i])}));
    i += run;
  }
  j["relations_rle"] = std::move(rle);
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

NodeOrdering read_ordering_json(const std::string& path) {
  const json j = load_json_file(path);
  const int n = j.at("n").get<int>();
  const std::string kind_name = j.at("kind").get<std::string>();
  OrderKind kind;
  if (kind_name == "weak") {
    kind = OrderKind::weak;
  } else if (kind_name == "partial") {
    kind = OrderKind::partial;
  } else {
    throw DataError("unknown ordering kind: " + kind_name);
  }
  std::vector<PairRelation> rel;
  for (const auto& run : j.at("relations_rle")) {
    const std::size_t count = run.at(0).get<std::size_t>();
    const PairRelation r = pair_relation_from_string(run.at(1).get<std::string>());
    rel.insert(rel.end(), count, r);
  }
  return NodeOrdering::from_relations(n, kind, j.value("tau", 0.0),
                                      std::move(rel), j.value("source", ""));
}

void write_concordance_json(const ConcordanceReport& r, const std::string& path) {
  json j;
  j["concordant"] = r.concordant;
  j["discordant"] = r.discordant;
  j["abstained"] = r.abstained;
  j["tied_pairs"] = r.tied_pairs;
  j["completeness"] = r.completeness;
  // Truth-tied pairs answered by estimate abstention land in `abstained`,
  // not `concordant`; estimate ties against a strict truth land in
  // `tied_pairs`.
  j["tie_policy"] = "truth_tie+abstain->abstained; est_tie+strict_truth->tied_pairs";
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

void write_csv_schema(const std::string& csv_path,
                      const std::vector<std::pair<std::string, std::string>>&
                          columns_and_types) {
  json cols = json::array();
  for (const auto& [name, type] : columns_and_types) {
    cols.push_back({{"name", name}, {"type", type}});
  }
  json j;
  j["columns"] = std::move(cols);
  auto out = open_out(csv_path + ".schema.json");
  out << j.dump(2) << '\n';
}

void write_text_file(const std::string& path, const std::string& content) {
  auto out = open_out(path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  auto in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace blindrank
