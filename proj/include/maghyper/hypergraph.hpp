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

#include <span>
#include <vector>

#include "maghyper/common.hpp"

namespace maghyper {

/// A weighted hypergraph over the dense vertex range [0, n).
///
/// Each hyperedge is stored as a sorted list of distinct vertex indices.
/// Edges keep the order in which they were supplied. Vertex degree is
/// d(v) = sum of w(e) over edges containing v; edge degree is |e|.
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Throws Error(kInvalidArgument) on an empty edge, an out-of-range or
  /// repeated vertex, or a non-positive (or non-finite) weight. An empty
  /// `weights` span means unit weights.
  Hypergraph(Index n_vertices, std::vector<std::vector<Index>> edges,
             std::span<const double> weights = {});

  Index num_vertices() const { return n_vertices_; }
  Index num_edges() const { return static_cast<Index>(edges_.size()); }

  const std::vector<Index>& edge(Index e) const { return edges_[static_cast<std::size_t>(e)]; }
  const std::vector<std::vector<Index>>& edges() const { return edges_; }

  double edge_weight(Index e) const { return weights_[static_cast<std::size_t>(e)]; }
  const std::vector<double>& edge_weights() const { return weights_; }

  Index edge_degree(Index e) const { return static_cast<Index>(edge(e).size()); }
  double vertex_degree(Index v) const { return vertex_degrees_[v]; }
  const Vector& vertex_degrees() const { return vertex_degrees_; }

  /// Edges incident to v, ascending.
  const std::vector<Index>& incident_edges(Index v) const {
    return incident_[static_cast<std::size_t>(v)];
  }

  /// Binary n x m incidence matrix Y.
  Eigen::SparseMatrix<double> incidence() const;

  /// Copy without edges of size one; `kept`, if given, receives the surviving
  /// original edge indices.
  Hypergraph without_singleton_edges(std::vector<Index>* kept = nullptr) const;

 private:
  Index n_vertices_ = 0;
  std::vector<std::vector<Index>> edges_;
  std::vector<double> weights_;
  std::vector<std::vector<Index>> incident_;
  Vector vertex_degrees_;
};

/// Edge-dependent vertex weights: an n x m nonnegative matrix R whose support
/// equals the incidence support, R(v, e) = gamma_e(v).
///
/// `normalized()` is true when every column sums to the edge degree |e|, which
/// is what makes D_V^-1 Y W D_E^-1 R^T row-stochastic.
class EdvwMatrix {
 public:
  EdvwMatrix() = default;

  /// `values` must be n x m with strictly positive entries exactly on the
  /// incidence pattern of `graph`.
  EdvwMatrix(const Hypergraph& graph, Eigen::SparseMatrix<double> values, bool normalized);

  /// Builds from per-edge weight lists parallel to `graph.edge(e)`.
  static EdvwMatrix from_edge_lists(const Hypergraph& graph,
                                    const std::vector<std::vector<double>>& gamma);

  const Eigen::SparseMatrix<double>& values() const { return values_; }
  bool normalized() const { return normalized_; }
  Index rows() const { return values_.rows(); }
  Index cols() const { return values_.cols(); }

  /// gamma_e(v) for each vertex of edge e, in `graph.edge(e)` order.
  std::vector<double> edge_values(const Hypergraph& graph, Index e) const;

  /// Rescales column e to sum to |e|.
  EdvwMatrix normalize(const Hypergraph& graph) const;

 private:
  Eigen::SparseMatrix<double> values_;
  bool normalized_ = false;
};

/// Clique expansion Y Y^T with the diagonal removed. Entry (u, v) counts the
/// hyperedges shared by u and v; edge weights are ignored.
SparseMatrix clique_expansion(const Hypergraph& graph);

/// Adjacency of the star expansion on n + m nodes: original vertices first,
/// then one node per hyperedge in edge order. Block form [[0, Y], [Y^T, 0]].
SparseMatrix star_expansion(const Hypergraph& graph);

/// EIVW: gamma_e(v) = 1 for every member. Already normalized.
EdvwMatrix uniform_edvw(const Hypergraph& graph);

/// R(v, e) = d(v) / sum_{u in e} d(u). Columns sum to one; not normalized.
EdvwMatrix degree_edvw(const Hypergraph& graph);

/// Document x term tf-idf values, tf = f(t,d) / sum_t' f(t',d) and
/// idf = ln(|D| / df(t)). Entries are stored only where the count is positive.
Eigen::SparseMatrix<double> tfidf_weights(const Eigen::SparseMatrix<double>& doc_term_counts);

struct TfidfHypergraph {
  Hypergraph graph;
  EdvwMatrix edvw;                 // raw tf-idf values, not normalized
  std::vector<Index> edge_terms;   // term column of each hyperedge
};

/// Documents become vertices and every informative term becomes a hyperedge
/// over the documents containing it. Edge weight is the population standard
/// deviation of the member tf-idf values. Terms that occur in no document or
/// in every document are dropped, as are terms whose weight comes out as zero
/// (single-document terms or constant tf-idf), since a zero-weight edge is
/// never selected by the walk.
TfidfHypergraph tfidf_edvw(const Eigen::SparseMatrix<double>& doc_term_counts);

struct KnnHypergraph {
  Hypergraph graph;
  EdvwMatrix edvw;  // RBF kernel values, not normalized
};

/// One hyperedge per vertex v holding v and its k nearest neighbours under
/// Euclidean distance (ties go to the lower index). The neighbour weight is
/// exp(-2 D(v,u) / bandwidth); v itself gets weight 1.
KnnHypergraph knn_hypergraph(const Matrix& features, Index k, double bandwidth);

}  // namespace maghyper
