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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "maghyper/hypergraph.hpp"
#include "test_support.hpp"

namespace maghyper {
namespace {

using testing::random_connected_hypergraph;

TEST(Hypergraph, DegreesOfTwoPairs) {
  Hypergraph h(3, {{0, 1}, {1, 2}});
  EXPECT_DOUBLE_EQ(h.vertex_degree(0), 1.0);
  EXPECT_DOUBLE_EQ(h.vertex_degree(1), 2.0);
  EXPECT_DOUBLE_EQ(h.vertex_degree(2), 1.0);
  EXPECT_EQ(h.edge_degree(0), 2);
  EXPECT_EQ(h.edge_degree(1), 2);
}

TEST(Hypergraph, WeightedSingleEdge) {
  const double w[] = {3.0};
  Hypergraph h(3, {{0, 1, 2}}, w);
  for (Index v = 0; v < 3; ++v) EXPECT_DOUBLE_EQ(h.vertex_degree(v), 3.0);
  EXPECT_EQ(h.edge_degree(0), 3);
}

TEST(Hypergraph, KeepsEdgeOrderAndSortsMembers) {
  Hypergraph h(4, {{3, 1}, {0}, {2, 0, 1}});
  EXPECT_EQ(h.edge(0), (std::vector<Index>{1, 3}));
  EXPECT_EQ(h.edge(1), (std::vector<Index>{0}));
  EXPECT_EQ(h.edge(2), (std::vector<Index>{0, 1, 2}));
  EXPECT_EQ(h.incident_edges(1), (std::vector<Index>{0, 2}));
}

TEST(Hypergraph, RejectsInvalidInput) {
  EXPECT_THROW(Hypergraph(3, {{}}), Error);
  EXPECT_THROW(Hypergraph(3, {{0, 3}}), Error);
  EXPECT_THROW(Hypergraph(3, {{0, 0}}), Error);
  const double zero[] = {0.0};
  EXPECT_THROW(Hypergraph(3, {{0, 1}}, zero), Error);
  const double negative[] = {-1.0};
  EXPECT_THROW(Hypergraph(3, {{0, 1}}, negative), Error);
  const double nan[] = {std::nan("")};
  EXPECT_THROW(Hypergraph(3, {{0, 1}}, nan), Error);
}

TEST(Hypergraph, DropsSingletonEdges) {
  Hypergraph h(3, {{0}, {0, 1}, {2}, {1, 2}});
  std::vector<Index> kept;
  Hypergraph g = h.without_singleton_edges(&kept);
  EXPECT_EQ(g.num_edges(), 2);
  EXPECT_EQ(kept, (std::vector<Index>{1, 3}));
}

TEST(HypergraphProperty, DegreeSumMatchesWeightedEdgeSizes) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Hypergraph h = random_connected_hypergraph(rng, 3 + trial % 25, 40);
    double lhs = h.vertex_degrees().sum();
    double rhs = 0.0;
    for (Index e = 0; e < h.num_edges(); ++e) rhs += h.edge_weight(e) * static_cast<double>(h.edge_degree(e));
    EXPECT_NEAR(lhs, rhs, 1e-12 * rhs);
  }
}

TEST(CliqueExpansion, TwoPairs) {
  Matrix a(clique_expansion(Hypergraph(3, {{0, 1}, {1, 2}})));
  EXPECT_EQ(a(0, 1), 1.0);
  EXPECT_EQ(a(1, 2), 1.0);
  EXPECT_EQ(a(0, 2), 0.0);
}

TEST(CliqueExpansion, SingleTripleIsComplete) {
  Matrix a(clique_expansion(Hypergraph(3, {{0, 1, 2}})));
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) EXPECT_EQ(a(i, j), i == j ? 0.0 : 1.0);
}

TEST(CliqueExpansion, IgnoresEdgeWeights) {
  const double w[] = {5.0, 0.5};
  Matrix a(clique_expansion(Hypergraph(3, {{0, 1}, {0, 1, 2}}, w)));
  EXPECT_EQ(a(0, 1), 2.0);
  EXPECT_EQ(a(0, 2), 1.0);
}

TEST(CliqueExpansionProperty, SymmetricIntegerZeroDiagonal) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    Hypergraph h = random_connected_hypergraph(rng, 10, 30, 5, false);
    Matrix a(clique_expansion(h));
    EXPECT_EQ((a - a.transpose()).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(a.diagonal().cwiseAbs().maxCoeff(), 0.0);
    for (Index k = 0; k < a.size(); ++k) {
      EXPECT_GE(a.data()[k], 0.0);
      EXPECT_EQ(a.data()[k], std::round(a.data()[k]));
    }
    // Shared-edge count by direct enumeration.
    for (Index u = 0; u < 10; ++u)
      for (Index v = u + 1; v < 10; ++v) {
        int shared = 0;
        for (const auto& e : h.edges())
          shared += std::count(e.begin(), e.end(), u) && std::count(e.begin(), e.end(), v);
        EXPECT_EQ(a(u, v), shared);
      }
  }
}

TEST(CliqueExpansion, DistinctHypergraphsCanShareExpansion) {
  // Exhaustive search over sets of hyperedges (size >= 2) on four vertices.
  std::vector<std::vector<Index>> subsets;
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<Index> s;
    for (Index v = 0; v < 4; ++v)
      if (mask & (1 << v)) s.push_back(v);
    if (s.size() >= 2) subsets.push_back(s);
  }
  std::map<std::vector<double>, std::set<int>> seen;
  int collisions = 0;
  for (int choice = 1; choice < (1 << subsets.size()); ++choice) {
    if (__builtin_popcount(static_cast<unsigned>(choice)) > 3) continue;
    std::vector<std::vector<Index>> edges;
    for (std::size_t k = 0; k < subsets.size(); ++k)
      if (choice & (1 << k)) edges.push_back(subsets[k]);
    Matrix a(clique_expansion(Hypergraph(4, edges)));
    std::vector<double> key(a.data(), a.data() + a.size());
    auto& bucket = seen[key];
    if (!bucket.empty()) ++collisions;
    bucket.insert(choice);
  }
  EXPECT_GT(collisions, 0);
  // The classic pair: one triangle hyperedge against its three sides.
  Matrix tri(clique_expansion(Hypergraph(3, {{0, 1, 2}})));
  Matrix sides(clique_expansion(Hypergraph(3, {{0, 1}, {1, 2}, {0, 2}})));
  EXPECT_EQ(tri, sides);
}

TEST(StarExpansion, Sizes) {
  SparseMatrix s1 = star_expansion(Hypergraph(2, {{0, 1}}));
  EXPECT_EQ(s1.rows(), 3);
  EXPECT_EQ(s1.nonZeros() / 2, 2);
  SparseMatrix s2 = star_expansion(Hypergraph(3, {{0, 1, 2}, {2}}));
  EXPECT_EQ(s2.rows(), 5);
  EXPECT_EQ(s2.nonZeros() / 2, 4);
}

TEST(StarExpansion, BlockForm) {
  std::mt19937_64 rng(13);
  Hypergraph h = random_connected_hypergraph(rng, 8, 12);
  Matrix y(h.incidence());
  Matrix expected = Matrix::Zero(8 + 12, 8 + 12);
  expected.topRightCorner(8, 12) = y;
  expected.bottomLeftCorner(12, 8) = y.transpose();
  EXPECT_EQ(Matrix(star_expansion(h)), expected);
}

TEST(DegreeEdvw, TwoPairs) {
  Hypergraph h(3, {{0, 1}, {1, 2}});
  Matrix r(degree_edvw(h).values());
  EXPECT_NEAR(r(0, 0), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(r(1, 0), 2.0 / 3.0, 1e-15);
  EXPECT_FALSE(degree_edvw(h).normalized());
}

TEST(DegreeEdvw, RegularHypergraphIsUniform) {
  Hypergraph h(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  Matrix r(degree_edvw(h).values());
  for (Index e = 0; e < 4; ++e)
    for (Index v : h.edge(e)) EXPECT_DOUBLE_EQ(r(v, e), 0.5);
}

TEST(DegreeEdvw, MatchesBruteForce) {
  std::mt19937_64 rng(14);
  Hypergraph h = random_connected_hypergraph(rng, 5, 7);
  Matrix y(h.incidence());
  Vector d = Vector::Zero(5);
  for (Index e = 0; e < h.num_edges(); ++e)
    for (Index v = 0; v < 5; ++v) d[v] += y(v, e) * h.edge_weight(e);
  Matrix r(degree_edvw(h).values());
  for (Index e = 0; e < h.num_edges(); ++e) {
    double total = 0.0;
    for (Index v = 0; v < 5; ++v) total += y(v, e) * d[v];
    EXPECT_NEAR(r.col(e).sum(), 1.0, 1e-12);
    for (Index v = 0; v < 5; ++v) EXPECT_NEAR(r(v, e), y(v, e) * d[v] / total, 1e-14);
  }
  EdvwMatrix normalized = degree_edvw(h).normalize(h);
  EXPECT_TRUE(normalized.normalized());
  Matrix rn(normalized.values());
  for (Index e = 0; e < h.num_edges(); ++e)
    EXPECT_NEAR(rn.col(e).sum(), static_cast<double>(h.edge_degree(e)), 1e-12);
}

TEST(Edvw, RejectsSupportMismatch) {
  Hypergraph h(3, {{0, 1}});
  Eigen::SparseMatrix<double> r(3, 1);
  r.insert(2, 0) = 1.0;
  EXPECT_THROW(EdvwMatrix(h, r, false), Error);
  EXPECT_THROW(EdvwMatrix::from_edge_lists(h, {{1.0, 0.0}}), Error);
}

Eigen::SparseMatrix<double> counts_from(const Matrix& dense) { return dense.sparseView(); }

TEST(Tfidf, SingleTermPlugIn) {
  Matrix c(2, 2);
  c << 1, 1, 0, 3;
  Matrix t(tfidf_weights(counts_from(c)));
  EXPECT_NEAR(t(0, 0), 0.5 * std::log(2.0), 1e-15);
  // Term 1 is in every document: idf = ln 1 = 0.
  EXPECT_EQ(t(0, 1), 0.0);
  EXPECT_EQ(t(1, 1), 0.0);
}

TEST(Tfidf, ToyCorpusMatchesCellwiseRecomputation) {
  Matrix c(4, 5);
  c << 2, 0, 1, 0, 1,
       0, 3, 1, 1, 1,
       1, 1, 0, 0, 1,
       0, 0, 2, 4, 1;
  Matrix t(tfidf_weights(counts_from(c)));
  for (Index d = 0; d < 4; ++d) {
    const double tokens = c.row(d).sum();
    for (Index w = 0; w < 5; ++w) {
      double df = 0;
      for (Index k = 0; k < 4; ++k) df += c(k, w) > 0;
      const double expected = c(d, w) > 0 ? c(d, w) / tokens * std::log(4.0 / df) : 0.0;
      EXPECT_NEAR(t(d, w), expected, 1e-15);
    }
  }
  TfidfHypergraph h = tfidf_edvw(counts_from(c));
  // Term 4 is everywhere and dropped; terms 0..3 survive with their support.
  EXPECT_EQ(h.edge_terms, (std::vector<Index>{0, 1, 2, 3}));
  for (Index e = 0; e < h.graph.num_edges(); ++e) {
    const Index term = h.edge_terms[static_cast<std::size_t>(e)];
    std::vector<Index> support;
    std::vector<double> values;
    for (Index d = 0; d < 4; ++d)
      if (c(d, term) > 0) {
        support.push_back(d);
        values.push_back(t(d, term));
      }
    EXPECT_EQ(h.graph.edge(e), support);
    double mean = 0.0;
    for (double x : values) mean += x / static_cast<double>(values.size());
    double var = 0.0;
    for (double x : values) var += (x - mean) * (x - mean) / static_cast<double>(values.size());
    EXPECT_NEAR(h.graph.edge_weight(e), std::sqrt(var), 1e-15);
    const auto gamma = h.edvw.edge_values(h.graph, e);
    for (std::size_t k = 0; k < values.size(); ++k) EXPECT_NEAR(gamma[k], values[k], 1e-15);
  }
}

TEST(Tfidf, RejectsEmptyDocumentAndNonIntegerCounts) {
  Matrix empty(2, 2);
  empty << 1, 0, 0, 0;
  EXPECT_THROW(tfidf_weights(counts_from(empty)), Error);
  Matrix frac(1, 1);
  frac << 0.5;
  EXPECT_THROW(tfidf_weights(counts_from(frac)), Error);
}

TEST(Knn, CollinearPoints) {
  Matrix x(3, 1);
  x << 0.0, 1.0, 3.0;
  KnnHypergraph h = knn_hypergraph(x, 1, 1.0);
  EXPECT_EQ(h.graph.edge(1), (std::vector<Index>{0, 1}));
  EXPECT_EQ(h.graph.edge(2), (std::vector<Index>{1, 2}));
  const auto g = h.edvw.edge_values(h.graph, 2);
  EXPECT_NEAR(g[0], std::exp(-4.0), 1e-15);
  EXPECT_EQ(g[1], 1.0);
}

TEST(Knn, CoincidentPointsGetUnitKernel) {
  Matrix x = Matrix::Zero(3, 2);
  KnnHypergraph h = knn_hypergraph(x, 2, 0.7);
  for (Index e = 0; e < 3; ++e)
    for (double g : h.edvw.edge_values(h.graph, e)) EXPECT_EQ(g, 1.0);
  // Ties go to the lower index.
  EXPECT_EQ(knn_hypergraph(x, 1, 1.0).graph.edge(2), (std::vector<Index>{0, 2}));
}

TEST(Knn, MatchesBruteForceScan) {
  std::mt19937_64 rng(15);
  std::normal_distribution<double> g;
  Matrix x(20, 3);
  for (Index k = 0; k < x.size(); ++k) x.data()[k] = g(rng);
  const Index k = 3;
  const double bw = 1.5;
  KnnHypergraph h = knn_hypergraph(x, k, bw);
  ASSERT_EQ(h.graph.num_edges(), 20);
  for (Index v = 0; v < 20; ++v) {
    std::vector<std::pair<double, Index>> all;
    for (Index u = 0; u < 20; ++u)
      if (u != v) all.push_back({(x.row(u) - x.row(v)).norm(), u});
    std::sort(all.begin(), all.end());
    std::vector<Index> expected{v};
    for (Index i = 0; i < k; ++i) expected.push_back(all[static_cast<std::size_t>(i)].second);
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(h.graph.edge(v), expected);
    EXPECT_EQ(h.graph.edge_degree(v), k + 1);
    const auto gamma = h.edvw.edge_values(h.graph, v);
    for (std::size_t i = 0; i < expected.size(); ++i) {
      const Index u = expected[i];
      EXPECT_NEAR(gamma[i], u == v ? 1.0 : std::exp(-2.0 * (x.row(u) - x.row(v)).norm() / bw), 1e-15);
    }
  }
}

TEST(Knn, RejectsBadArguments) {
  Matrix x = Matrix::Zero(3, 1);
  EXPECT_THROW(knn_hypergraph(x, 3, 1.0), Error);
  EXPECT_THROW(knn_hypergraph(x, 1, 0.0), Error);
}

}  // namespace
}  // namespace maghyper
