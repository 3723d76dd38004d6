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

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "maghyper/common.hpp"
#include "maghyper/hypergraph.hpp"

namespace maghyper {

/// A hypergraph read from line-JSON, with the external ids of its vertices
/// and edges. `edvw` holds the raw per-membership values when every record
/// carries them.
struct HypergraphData {
  Hypergraph graph;
  std::optional<EdvwMatrix> edvw;
  std::vector<std::string> vertex_ids;
  std::vector<std::string> edge_ids;

  std::unordered_map<std::string, Index> vertex_index() const;
  /// Drops single-vertex edges, keeping ids and EDVW columns aligned.
  HypergraphData without_singleton_edges() const;
};

struct LabelData {
  std::vector<int> labels;           // -1 marks an unlabeled vertex
  std::vector<std::string> classes;  // sorted class names
  int num_classes() const { return static_cast<int>(classes.size()); }
};

struct Dataset {
  HypergraphData hypergraph;
  Matrix features;
  LabelData labels;
};

/// One JSON object per line. An optional first line
/// {"format": "maghyper.hypergraph", "version": 1, "vertices": [...]} fixes
/// the vertex order and admits isolated vertices; otherwise vertices are
/// numbered by first appearance.
HypergraphData read_hypergraph(std::istream& in, const std::string& source = "<stream>");
HypergraphData load_hypergraph(const std::string& path);
void write_hypergraph(std::ostream& out, const HypergraphData& data);
void save_hypergraph(const std::string& path, const HypergraphData& data);

/// CSV rows "id,x1,...,xf"; lines starting with '#' are comments. Every
/// vertex must appear exactly once.
Matrix load_features(const std::string& path, const std::vector<std::string>& vertex_ids);
void save_features(const std::string& path, const Matrix& features,
                   const std::vector<std::string>& vertex_ids);

/// CSV rows "id,class". Vertices without a row are unlabeled.
LabelData load_labels(const std::string& path, const std::vector<std::string>& vertex_ids);
void save_labels(const std::string& path, const LabelData& labels,
                 const std::vector<std::string>& vertex_ids);

Dataset load_dataset(const std::string& hypergraph_path, const std::string& features_path,
                     const std::string& labels_path, bool drop_singleton_edges);

/// Coordinate text: '%' comment lines, a "rows cols nnz" header, then
/// zero-based "row col value" (or "row col re im") lines in row-major order.
/// Values are printed with 17 significant digits, so roundtrips are exact.
void save_coo(const std::string& path, const SparseMatrix& m);
void save_coo(const std::string& path, const CSparseMatrix& m);
SparseMatrix load_coo(const std::string& path);
CSparseMatrix load_complex_coo(const std::string& path);

/// Writes `text` to `path`, failing with an I/O error.
void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace maghyper
