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

#include "maghyper/hypergraph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace maghyper {

Hypergraph::Hypergraph(Index n_vertices, std::vector<std::vector<Index>> edges,
                       std::span<const double> weights)
    : n_vertices_(n_vertices), edges_(std::move(edges)) {
  require(n_vertices_ >= 0, "vertex count must be nonnegative");
  require(weights.empty() || weights.size() == edges_.size(),
          "edge weight count " + std::to_string(weights.size()) + " does not match edge count " +
              std::to_string(edges_.size()));
  weights_.assign(edges_.size(), 1.0);
  if (!weights.empty()) std::copy(weights.begin(), weights.end(), weights_.begin());

  incident_.assign(static_cast<std::size_t>(n_vertices_), {});
  vertex_degrees_ = Vector::Zero(n_vertices_);
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    auto& members = edges_[e];
    require(!members.empty(), "edge " + std::to_string(e) + " is empty");
    require(std::isfinite(weights_[e]) && weights_[e] > 0.0,
            "edge " + std::to_string(e) + " has non-positive weight");
    std::sort(members.begin(), members.end());
    for (std::size_t i = 0; i < members.size(); ++i) {
      const Index v = members[i];
      require(v >= 0 && v < n_vertices_,
              "edge " + std::to_string(e) + " references vertex " + std::to_string(v) +
                  " outside [0, " + std::to_string(n_vertices_) + ")");
      require(i == 0 || members[i - 1] != v,
              "edge " + std::to_string(e) + " repeats vertex " + std::to_string(v));
      incident_[static_cast<std::size_t>(v)].push_back(static_cast<Index>(e));
      vertex_degrees_[v] += weights_[e];
    }
  }
}

Eigen::SparseMatrix<double> Hypergraph::incidence() const {
  std::vector<Triplet> entries;
  for (Index e = 0; e < num_edges(); ++e)
    for (Index v : edge(e)) entries.emplace_back(v, e, 1.0);
  Eigen::SparseMatrix<double> y(n_vertices_, num_edges());
  y.setFromTriplets(entries.begin(), entries.end());
  return y;
}

Hypergraph Hypergraph::without_singleton_edges(std::vector<Index>* kept) const {
  std::vector<std::vector<Index>> edges;
  std::vector<double> weights;
  if (kept) kept->clear();
  for (Index e = 0; e < num_edges(); ++e) {
    if (edge_degree(e) < 2) continue;
    edges.push_back(edge(e));
    weights.push_back(edge_weight(e));
    if (kept) kept->push_back(e);
  }
  return Hypergraph(n_vertices_, std::move(edges), weights);
}

EdvwMatrix::EdvwMatrix(const Hypergraph& graph, Eigen::SparseMatrix<double> values,
                       bool normalized)
    : values_(std::move(values)), normalized_(normalized) {
  require(values_.rows() == graph.num_vertices() && values_.cols() == graph.num_edges(),
          "EDVW matrix must be " + std::to_string(graph.num_vertices()) + " x " +
              std::to_string(graph.num_edges()));
  values_.prune(0.0);
  values_.makeCompressed();
  for (Index e = 0; e < graph.num_edges(); ++e) {
    const auto& members = graph.edge(e);
    std::size_t i = 0;
    double total = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(values_, e); it; ++it, ++i) {
      require(std::isfinite(it.value()) && it.value() > 0.0,
              "EDVW entry (" + std::to_string(it.row()) + ", " + std::to_string(e) +
                  ") must be positive");
      require(i < members.size() && members[i] == it.row(),
              "EDVW support differs from the incidence of edge " + std::to_string(e));
      total += it.value();
    }
    require(i == members.size(),
            "EDVW support differs from the incidence of edge " + std::to_string(e));
    if (normalized_) {
      const double expected = static_cast<double>(members.size());
      require(std::abs(total - expected) <= 1e-12 * std::max(1.0, expected),
              "EDVW column " + std::to_string(e) + " flagged normalized but sums to " +
                  std::to_string(total));
    }
  }
}

EdvwMatrix EdvwMatrix::from_edge_lists(const Hypergraph& graph,
                                       const std::vector<std::vector<double>>& gamma) {
  require(static_cast<Index>(gamma.size()) == graph.num_edges(),
          "one EDVW list per edge is required");
  std::vector<Triplet> entries;
  for (Index e = 0; e < graph.num_edges(); ++e) {
    const auto& members = graph.edge(e);
    const auto& g = gamma[static_cast<std::size_t>(e)];
    require(g.size() == members.size(),
            "EDVW list of edge " + std::to_string(e) + " has the wrong length");
    for (std::size_t i = 0; i < members.size(); ++i) {
      require(std::isfinite(g[i]) && g[i] > 0.0,
              "EDVW of vertex " + std::to_string(members[i]) + " in edge " + std::to_string(e) +
                  " must be positive");
      entries.emplace_back(members[i], e, g[i]);
    }
  }
  Eigen::SparseMatrix<double> r(graph.num_vertices(), graph.num_edges());
  r.setFromTriplets(entries.begin(), entries.end());
  return EdvwMatrix(graph, std::move(r), false);
}

std::vector<double> EdvwMatrix::edge_values(const Hypergraph& graph, Index e) const {
  std::vector<double> out;
  out.reserve(graph.edge(e).size());
  for (Eigen::SparseMatrix<double>::InnerIterator it(values_, e); it; ++it)
    out.push_back(it.value());
  return out;
}

EdvwMatrix EdvwMatrix::normalize(const Hypergraph& graph) const {
  Eigen::SparseMatrix<double> r = values_;
  for (Index e = 0; e < r.outerSize(); ++e) {
    double total = 0.0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(r, e); it; ++it) total += it.value();
    const double scale = static_cast<double>(graph.edge_degree(e)) / total;
    for (Eigen::SparseMatrix<double>::InnerIterator it(r, e); it; ++it) it.valueRef() *= scale;
  }
  return EdvwMatrix(graph, std::move(r), true);
}

SparseMatrix clique_expansion(const Hypergraph& graph) {
  const Eigen::SparseMatrix<double> y = graph.incidence();
  SparseMatrix adj = y * y.transpose();
  for (Index v = 0; v < adj.rows(); ++v)
    if (adj.coeff(v, v) != 0.0) adj.coeffRef(v, v) = 0.0;
  adj.prune(0.0);
  adj.makeCompressed();
  return adj;
}

SparseMatrix star_expansion(const Hypergraph& graph) {
  const Index n = graph.num_vertices();
  std::vector<Triplet> entries;
  for (Index e = 0; e < graph.num_edges(); ++e) {
    for (Index v : graph.edge(e)) {
      entries.emplace_back(v, n + e, 1.0);
      entries.emplace_back(n + e, v, 1.0);
    }
  }
  SparseMatrix adj(n + graph.num_edges(), n + graph.num_edges());
  adj.setFromTriplets(entries.begin(), entries.end());
  return adj;
}

EdvwMatrix uniform_edvw(const Hypergraph& graph) { return EdvwMatrix(graph, graph.incidence(), true); }

EdvwMatrix degree_edvw(const Hypergraph& graph) {
  std::vector<std::vector<double>> gamma(static_cast<std::size_t>(graph.num_edges()));
  for (Index e = 0; e < graph.num_edges(); ++e) {
    double total = 0.0;
    for (Index v : graph.edge(e)) total += graph.vertex_degree(v);
    auto& g = gamma[static_cast<std::size_t>(e)];
    for (Index v : graph.edge(e)) g.push_back(graph.vertex_degree(v) / total);
  }
  return EdvwMatrix::from_edge_lists(graph, gamma);
}

Eigen::SparseMatrix<double> tfidf_weights(const Eigen::SparseMatrix<double>& counts) {
  const Index n_docs = counts.rows();
  const Index n_terms = counts.cols();
  Vector doc_tokens = Vector::Zero(n_docs);
  std::vector<Index> doc_freq(static_cast<std::size_t>(n_terms), 0);
  for (Index t = 0; t < counts.outerSize(); ++t) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(counts, t); it; ++it) {
      require(it.value() >= 0.0 && std::floor(it.value()) == it.value(),
              "term counts must be nonnegative integers");
      if (it.value() == 0.0) continue;
      doc_tokens[it.row()] += it.value();
      ++doc_freq[static_cast<std::size_t>(t)];
    }
  }
  for (Index d = 0; d < n_docs; ++d)
    require(doc_tokens[d] > 0.0, "document " + std::to_string(d) + " has no terms");

  std::vector<Triplet> entries;
  for (Index t = 0; t < counts.outerSize(); ++t) {
    const auto df = doc_freq[static_cast<std::size_t>(t)];
    if (df == 0) continue;
    const double idf = std::log(static_cast<double>(n_docs) / static_cast<double>(df));
    for (Eigen::SparseMatrix<double>::InnerIterator it(counts, t); it; ++it) {
      if (it.value() == 0.0) continue;
      entries.emplace_back(it.row(), t, it.value() / doc_tokens[it.row()] * idf);
    }
  }
  Eigen::SparseMatrix<double> out(n_docs, n_terms);
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

TfidfHypergraph tfidf_edvw(const Eigen::SparseMatrix<double>& counts) {
  const Eigen::SparseMatrix<double> tfidf = tfidf_weights(counts);
  std::vector<std::vector<Index>> edges;
  std::vector<std::vector<double>> gamma;
  std::vector<double> weights;
  std::vector<Index> edge_terms;
  for (Index t = 0; t < tfidf.outerSize(); ++t) {
    std::vector<Index> members;
    std::vector<double> values;
    for (Eigen::SparseMatrix<double>::InnerIterator it(tfidf, t); it; ++it) {
      members.push_back(it.row());
      values.push_back(it.value());
    }
    if (members.empty() || static_cast<Index>(members.size()) == counts.rows()) continue;
    const double mean =
        std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    double var = 0.0;
    for (double x : values) var += (x - mean) * (x - mean);
    const double sd = std::sqrt(var / static_cast<double>(values.size()));
    if (!(sd > 0.0)) continue;
    edges.push_back(std::move(members));
    gamma.push_back(std::move(values));
    weights.push_back(sd);
    edge_terms.push_back(t);
  }
  Hypergraph graph(counts.rows(), std::move(edges), weights);
  EdvwMatrix edvw = EdvwMatrix::from_edge_lists(graph, gamma);
  return {std::move(graph), std::move(edvw), std::move(edge_terms)};
}

KnnHypergraph knn_hypergraph(const Matrix& features, Index k, double bandwidth) {
  const Index n = features.rows();
  require(k >= 1 && k < n, "k must satisfy 1 <= k < n");
  require(std::isfinite(bandwidth) && bandwidth > 0.0, "bandwidth must be positive");

  std::vector<std::vector<Index>> edges(static_cast<std::size_t>(n));
  std::vector<std::vector<double>> gamma(static_cast<std::size_t>(n));
  std::vector<std::pair<double, Index>> dist(static_cast<std::size_t>(n - 1));
  for (Index v = 0; v < n; ++v) {
    std::size_t j = 0;
    for (Index u = 0; u < n; ++u) {
      if (u == v) continue;
      dist[j++] = {(features.row(v) - features.row(u)).norm(), u};
    }
    // Pair ordering breaks distance ties by the lower index.
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
    std::vector<std::pair<Index, double>> members{{v, 1.0}};
    for (Index i = 0; i < k; ++i) {
      const auto [d, u] = dist[static_cast<std::size_t>(i)];
      members.emplace_back(u, std::exp(-2.0 * d / bandwidth));
    }
    std::sort(members.begin(), members.end());
    for (const auto& [u, w] : members) {
      edges[static_cast<std::size_t>(v)].push_back(u);
      // exp underflow would break the positive-support invariant
      gamma[static_cast<std::size_t>(v)].push_back(std::max(w, std::numeric_limits<double>::min()));
    }
  }
  Hypergraph graph(n, std::move(edges));
  EdvwMatrix edvw = EdvwMatrix::from_edge_lists(graph, gamma);
  return {std::move(graph), std::move(edvw)};
}

}  // namespace maghyper
