/* Copyright 2026 The maghyper Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License. */

#include "maghyper/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string_view>

#include "json.hpp"

namespace maghyper {
namespace {

using nlohmann::json;

constexpr const char* kHypergraphFormat = "maghyper.hypergraph";
constexpr int kFormatVersion = 1;

[[noreturn]] void parse_fail(const std::string& source, std::size_t line, const std::string& msg) {
  fail(ErrorCode::kParse, source + ":" + std::to_string(line) + ": " + msg);
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path + " for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::kIo, "cannot open " + path + " for writing");
  return out;
}

void close_out(std::ofstream& out, const std::string& path) {
  out.close();
  if (!out) fail(ErrorCode::kIo, "failed writing " + path);
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool skip_line(std::string_view line, char comment) {
  const auto t = trim(line);
  return t.empty() || t.front() == comment;
}

std::vector<std::string_view> split_fields(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string unquote(std::string_view s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_index(std::string_view s, Index& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string id_of(const json& j, const std::string& source, std::size_t line, const char* what) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  parse_fail(source, line, std::string(what) + " must be a string or an integer");
}

std::unordered_map<std::string, Index> index_of(const std::vector<std::string>& ids) {
  std::unordered_map<std::string, Index> map;
  map.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (!map.emplace(ids[i], static_cast<Index>(i)).second)
      fail(ErrorCode::kInvalidArgument, "duplicate vertex id '" + ids[i] + "'");
  return map;
}

}  // namespace

std::unordered_map<std::string, Index> HypergraphData::vertex_index() const {
  return index_of(vertex_ids);
}

HypergraphData HypergraphData::without_singleton_edges() const {
  HypergraphData out;
  std::vector<Index> kept;
  out.graph = graph.without_singleton_edges(&kept);
  out.vertex_ids = vertex_ids;
  for (Index e : kept) out.edge_ids.push_back(edge_ids[static_cast<std::size_t>(e)]);
  if (edvw) {
    std::vector<Triplet> trips;
    for (std::size_t k = 0; k < kept.size(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(edvw->values(), kept[k]); it; ++it)
        trips.emplace_back(it.row(), static_cast<Index>(k), it.value());
    Eigen::SparseMatrix<double> values(graph.num_vertices(), static_cast<Index>(kept.size()));
    values.setFromTriplets(trips.begin(), trips.end());
    out.edvw = EdvwMatrix(out.graph, std::move(values), false);
  }
  return out;
}

HypergraphData read_hypergraph(std::istream& in, const std::string& source) {
  HypergraphData data;
  std::unordered_map<std::string, Index> vertex_map;
  bool fixed_vertices = false;
  std::set<std::string> edge_seen;
  std::vector<std::vector<Index>> edges;
  std::vector<double> weights;
  std::vector<Triplet> edvw;
  std::optional<bool> has_edvw;

  std::string line;
  std::size_t lineno = 0;
  bool first_record = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    json rec;
    try {
      rec = json::parse(line);
    } catch (const json::exception& e) {
      parse_fail(source, lineno, std::string("invalid JSON: ") + e.what());
    }
    if (!rec.is_object()) parse_fail(source, lineno, "expected a JSON object");

    if (rec.contains("format")) {
      if (!first_record) parse_fail(source, lineno, "format header must be the first line");
      if (rec["format"] != kHypergraphFormat) parse_fail(source, lineno, "unknown format tag");
      if (!rec.contains("version") || !rec["version"].is_number_integer() ||
          rec["version"].get<int>() > kFormatVersion)
        parse_fail(source, lineno, "unsupported format version");
      if (rec.contains("vertices")) {
        if (!rec["vertices"].is_array()) parse_fail(source, lineno, "\"vertices\" must be an array");
        for (const auto& v : rec["vertices"]) {
          const auto id = id_of(v, source, lineno, "vertex id");
          if (!vertex_map.emplace(id, static_cast<Index>(data.vertex_ids.size())).second)
            parse_fail(source, lineno, "duplicate vertex id '" + id + "'");
          data.vertex_ids.push_back(id);
        }
        fixed_vertices = true;
      }
      first_record = false;
      continue;
    }
    first_record = false;

    if (!rec.contains("edge")) parse_fail(source, lineno, "missing \"edge\"");
    const auto edge_id = id_of(rec["edge"], source, lineno, "edge id");
    if (!edge_seen.insert(edge_id).second) parse_fail(source, lineno, "duplicate edge id '" + edge_id + "'");
    if (!rec.contains("vertices") || !rec["vertices"].is_array() || rec["vertices"].empty())
      parse_fail(source, lineno, "\"vertices\" must be a non-empty array");

    double weight = 1.0;
    if (rec.contains("weight")) {
      if (!rec["weight"].is_number()) parse_fail(source, lineno, "\"weight\" must be a number");
      weight = rec["weight"].get<double>();
      if (!(weight > 0.0) || !std::isfinite(weight)) parse_fail(source, lineno, "\"weight\" must be positive");
    }

    const bool line_edvw = rec.contains("edvw");
    if (has_edvw && *has_edvw != line_edvw)
      parse_fail(source, lineno, "\"edvw\" must be given on every line or on none");
    has_edvw = line_edvw;
    if (line_edvw && (!rec["edvw"].is_array() || rec["edvw"].size() != rec["vertices"].size()))
      parse_fail(source, lineno, "\"edvw\" must be an array parallel to \"vertices\"");

    const Index e = static_cast<Index>(edges.size());
    std::vector<Index> members;
    for (std::size_t k = 0; k < rec["vertices"].size(); ++k) {
      const auto id = id_of(rec["vertices"][k], source, lineno, "vertex id");
      auto it = vertex_map.find(id);
      if (it == vertex_map.end()) {
        if (fixed_vertices) parse_fail(source, lineno, "vertex '" + id + "' is not in the header");
        it = vertex_map.emplace(id, static_cast<Index>(data.vertex_ids.size())).first;
        data.vertex_ids.push_back(id);
      }
      if (std::find(members.begin(), members.end(), it->second) != members.end())
        parse_fail(source, lineno, "vertex '" + id + "' repeated in edge");
      members.push_back(it->second);
      if (line_edvw) {
        const auto& g = rec["edvw"][k];
        if (!g.is_number() || !(g.get<double>() > 0.0) || !std::isfinite(g.get<double>()))
          parse_fail(source, lineno, "EDVW values must be positive numbers");
        edvw.emplace_back(it->second, e, g.get<double>());
      }
    }
    edges.push_back(std::move(members));
    weights.push_back(weight);
    data.edge_ids.push_back(edge_id);
  }
  if (in.bad()) fail(ErrorCode::kIo, "read error on " + source);

  const auto n = static_cast<Index>(data.vertex_ids.size());
  data.graph = Hypergraph(n, std::move(edges), weights);
  if (has_edvw.value_or(false)) {
    Eigen::SparseMatrix<double> values(n, data.graph.num_edges());
    values.setFromTriplets(edvw.begin(), edvw.end());
    data.edvw = EdvwMatrix(data.graph, std::move(values), false);
  }
  return data;
}

HypergraphData load_hypergraph(const std::string& path) {
  auto in = open_in(path);
  return read_hypergraph(in, path);
}

void write_hypergraph(std::ostream& out, const HypergraphData& data) {
  const auto& g = data.graph;
  require(static_cast<Index>(data.vertex_ids.size()) == g.num_vertices() &&
              static_cast<Index>(data.edge_ids.size()) == g.num_edges(),
          "ids do not match the hypergraph");
  json header = {{"format", kHypergraphFormat}, {"version", kFormatVersion}, {"vertices", data.vertex_ids}};
  out << header.dump() << '\n';
  for (Index e = 0; e < g.num_edges(); ++e) {
    json rec;
    rec["edge"] = data.edge_ids[static_cast<std::size_t>(e)];
    json vertices = json::array();
    for (Index v : g.edge(e)) vertices.push_back(data.vertex_ids[static_cast<std::size_t>(v)]);
    rec["vertices"] = std::move(vertices);
    rec["weight"] = g.edge_weight(e);
    if (data.edvw) rec["edvw"] = data.edvw->edge_values(g, e);
    out << rec.dump() << '\n';
  }
}

void save_hypergraph(const std::string& path, const HypergraphData& data) {
  auto out = open_out(path);
  write_hypergraph(out, data);
  close_out(out, path);
}

Matrix load_features(const std::string& path, const std::vector<std::string>& vertex_ids) {
  const auto index = index_of(vertex_ids);
  auto in = open_in(path);
  std::vector<std::vector<double>> rows(vertex_ids.size());
  std::vector<bool> seen(vertex_ids.size(), false);
  std::optional<std::size_t> width;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skip_line(line, '#')) continue;
    const auto fields = split_fields(line, ',');
    if (fields.size() < 2) parse_fail(path, lineno, "expected an id and at least one value");
    const auto id = unquote(fields[0]);
    const auto it = index.find(id);
    if (it == index.end()) parse_fail(path, lineno, "unknown vertex id '" + id + "'");
    const auto v = static_cast<std::size_t>(it->second);
    if (seen[v]) parse_fail(path, lineno, "duplicate vertex id '" + id + "'");
    seen[v] = true;
    if (width && *width != fields.size() - 1) parse_fail(path, lineno, "inconsistent column count");
    width = fields.size() - 1;
    rows[v].resize(fields.size() - 1);
    for (std::size_t k = 1; k < fields.size(); ++k)
      if (!parse_double(fields[k], rows[v][k - 1]) || !std::isfinite(rows[v][k - 1]))
        parse_fail(path, lineno, "column " + std::to_string(k + 1) + " is not a finite number");
  }
  for (std::size_t v = 0; v < seen.size(); ++v)
    if (!seen[v]) fail(ErrorCode::kParse, path + ": no features for vertex '" + vertex_ids[v] + "'");
  Matrix out(static_cast<Index>(vertex_ids.size()), static_cast<Index>(width.value_or(0)));
  for (std::size_t v = 0; v < rows.size(); ++v)
    for (std::size_t k = 0; k < rows[v].size(); ++k)
      out(static_cast<Index>(v), static_cast<Index>(k)) = rows[v][k];
  return out;
}

void save_features(const std::string& path, const Matrix& features,
                   const std::vector<std::string>& vertex_ids) {
  require(static_cast<Index>(vertex_ids.size()) == features.rows(), "one id per feature row is required");
  auto out = open_out(path);
  out << "# maghyper features v" << kFormatVersion << '\n';
  for (Index v = 0; v < features.rows(); ++v) {
    out << vertex_ids[static_cast<std::size_t>(v)];
    for (Index k = 0; k < features.cols(); ++k) out << ',' << format_double(features(v, k));
    out << '\n';
  }
  close_out(out, path);
}

LabelData load_labels(const std::string& path, const std::vector<std::string>& vertex_ids) {
  const auto index = index_of(vertex_ids);
  auto in = open_in(path);
  std::vector<std::string> names(vertex_ids.size());
  std::vector<bool> seen(vertex_ids.size(), false);
  std::set<std::string> classes;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (skip_line(line, '#')) continue;
    const auto fields = split_fields(line, ',');
    if (fields.size() != 2) parse_fail(path, lineno, "expected \"id,class\"");
    const auto id = unquote(fields[0]);
    const auto it = index.find(id);
    if (it == index.end()) parse_fail(path, lineno, "unknown vertex id '" + id + "'");
    const auto v = static_cast<std::size_t>(it->second);
    if (seen[v]) parse_fail(path, lineno, "duplicate vertex id '" + id + "'");
    auto cls = unquote(fields[1]);
    if (cls.empty()) parse_fail(path, lineno, "empty class name");
    seen[v] = true;
    classes.insert(cls);
    names[v] = std::move(cls);
  }
  LabelData out;
  out.classes.assign(classes.begin(), classes.end());
  std::map<std::string, int> code;
  for (std::size_t c = 0; c < out.classes.size(); ++c) code[out.classes[c]] = static_cast<int>(c);
  out.labels.assign(vertex_ids.size(), -1);
  for (std::size_t v = 0; v < names.size(); ++v)
    if (seen[v]) out.labels[v] = code[names[v]];
  return out;
}

void save_labels(const std::string& path, const LabelData& labels,
                 const std::vector<std::string>& vertex_ids) {
  require(labels.labels.size() == vertex_ids.size(), "one id per label is required");
  auto out = open_out(path);
  out << "# maghyper labels v" << kFormatVersion << '\n';
  for (std::size_t v = 0; v < vertex_ids.size(); ++v) {
    const int y = labels.labels[v];
    if (y < 0) continue;
    require(y < labels.num_classes(), "label outside the class list");
    out << vertex_ids[v] << ',' << labels.classes[static_cast<std::size_t>(y)] << '\n';
  }
  close_out(out, path);
}

Dataset load_dataset(const std::string& hypergraph_path, const std::string& features_path,
                     const std::string& labels_path, bool drop_singleton_edges) {
  Dataset data;
  data.hypergraph = load_hypergraph(hypergraph_path);
  if (drop_singleton_edges) data.hypergraph = data.hypergraph.without_singleton_edges();
  data.features = load_features(features_path, data.hypergraph.vertex_ids);
  data.labels = load_labels(labels_path, data.hypergraph.vertex_ids);
  return data;
}

namespace {

template <typename Scalar>
void save_coo_impl(const std::string& path, const Eigen::SparseMatrix<Scalar, Eigen::RowMajor>& m,
                   const char* kind) {
  auto out = open_out(path);
  out << "% maghyper coo " << kind << " v" << kFormatVersion << '\n';
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  for (Index r = 0; r < m.outerSize(); ++r) {
    for (typename Eigen::SparseMatrix<Scalar, Eigen::RowMajor>::InnerIterator it(m, r); it; ++it) {
      out << it.row() << ' ' << it.col() << ' ';
      if constexpr (std::is_same_v<Scalar, double>) {
        out << format_double(it.value());
      } else {
        out << format_double(it.value().real()) << ' ' << format_double(it.value().imag());
      }
      out << '\n';
    }
  }
  close_out(out, path);
}

template <typename Scalar>
Eigen::SparseMatrix<Scalar, Eigen::RowMajor> load_coo_impl(const std::string& path) {
  constexpr bool kComplex = !std::is_same_v<Scalar, double>;
  constexpr std::size_t kFields = kComplex ? 4 : 3;
  auto in = open_in(path);
  std::string line;
  std::size_t lineno = 0;
  Index rows = -1, cols = -1, nnz = -1;
  std::vector<Eigen::Triplet<Scalar>> trips;
  while (std::getline(in, line)) {
    ++lineno;
    if (skip_line(line, '%')) continue;
    const auto f = split_whitespace(line);
    if (rows < 0) {
      if (f.size() != 3 || !parse_index(f[0], rows) || !parse_index(f[1], cols) ||
          !parse_index(f[2], nnz) || rows < 0 || cols < 0 || nnz < 0)
        parse_fail(path, lineno, "expected a \"rows cols nnz\" header");
      trips.reserve(static_cast<std::size_t>(nnz));
      continue;
    }
    if (f.size() != kFields)
      parse_fail(path, lineno, "expected " + std::to_string(kFields) + " fields");
    Index r = 0, c = 0;
    double re = 0.0, im = 0.0;
    if (!parse_index(f[0], r) || !parse_index(f[1], c) || r < 0 || c < 0 || r >= rows || c >= cols)
      parse_fail(path, lineno, "index out of range");
    if (!parse_double(f[2], re) || (kComplex && !parse_double(f[3], im)))
      parse_fail(path, lineno, "malformed value");
    if (static_cast<Index>(trips.size()) == nnz) parse_fail(path, lineno, "more entries than the header declares");
    if constexpr (kComplex) {
      trips.emplace_back(r, c, Complex(re, im));
    } else {
      trips.emplace_back(r, c, re);
    }
  }
  if (rows < 0) fail(ErrorCode::kParse, path + ": missing header");
  if (static_cast<Index>(trips.size()) != nnz)
    fail(ErrorCode::kParse, path + ": header declares " + std::to_string(nnz) + " entries, found " +
                                std::to_string(trips.size()));
  Eigen::SparseMatrix<Scalar, Eigen::RowMajor> m(rows, cols);
  m.setFromTriplets(trips.begin(), trips.end(), [&](const Scalar&, const Scalar&) -> Scalar {
    fail(ErrorCode::kParse, path + ": duplicate coordinate");
  });
  return m;
}

}  // namespace

void save_coo(const std::string& path, const SparseMatrix& m) { save_coo_impl(path, m, "real"); }
void save_coo(const std::string& path, const CSparseMatrix& m) { save_coo_impl(path, m, "complex"); }
SparseMatrix load_coo(const std::string& path) { return load_coo_impl<double>(path); }
CSparseMatrix load_complex_coo(const std::string& path) { return load_coo_impl<Complex>(path); }

void write_text(const std::string& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
  close_out(out, path);
}

std::string read_text(const std::string& path) {
  auto in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace maghyper
