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
#include <random>
#include <string>

#include "maghyper/random_walk.hpp"
#include "test_support.hpp"

namespace maghyper {
namespace {

using testing::random_connected_hypergraph;
using testing::random_edvw;

TransitionMatrix from_dense(const Matrix& p) { return {SparseMatrix(p.sparseView()), WalkKind::kEdvw}; }

TEST(ZhouWalk, SinglePair) {
  Matrix p = zhou_transition(Hypergraph(2, {{0, 1}})).dense();
  EXPECT_EQ(p, Matrix::Constant(2, 2, 0.5));
}

TEST(ZhouWalk, MiddleRowOfTwoPairs) {
  Matrix p = zhou_transition(Hypergraph(3, {{0, 1}, {1, 2}})).dense();
  // Hand evaluation of sum_e w y(v,e) y(u,e) / (d(v) delta(e)) for v = 1.
  EXPECT_DOUBLE_EQ(p(1, 0), 0.25);
  EXPECT_DOUBLE_EQ(p(1, 1), 0.5);
  EXPECT_DOUBLE_EQ(p(1, 2), 0.25);
}

TEST(ZhouWalk, IsolatedVertexIsNamed) {
  try {
    zhou_transition(Hypergraph(3, {{0, 1}}));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("vertex 2"), std::string::npos) << e.what();
  }
}

TEST(EdvwWalk, UniformWeightsRecoverZhou) {
  std::mt19937_64 rng(21);
  Hypergraph h = random_connected_hypergraph(rng, 12, 20);
  Matrix diff = edvw_transition(h, uniform_edvw(h)).dense() - zhou_transition(h).dense();
  EXPECT_LE(testing::max_abs(diff), 1e-12);
}

TEST(EdvwWalk, HeavyVertexAttractsWalk) {
  Hypergraph h(3, {{0, 1, 2}});
  EdvwMatrix r = EdvwMatrix::from_edge_lists(h, {{7.0, 1.0, 1.0}}).normalize(h);
  Matrix p = edvw_transition(h, r).dense();
  EXPECT_GT(p(2, 0), p(2, 1));
  EXPECT_NEAR(p(2, 0), 7.0 / 9.0, 1e-15);
}

TEST(EdvwWalk, RejectsUnnormalizedWeights) {
  Hypergraph h(3, {{0, 1, 2}});
  try {
    edvw_transition(h, EdvwMatrix::from_edge_lists(h, {{7.0, 1.0, 1.0}}));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("normalize"), std::string::npos) << e.what();
  }
}

TEST(EdvwWalk, MatchesMonteCarloOfTwoStepSampling) {
  const double w[] = {1.0, 2.0, 0.5};
  Hypergraph h(4, {{0, 1, 2}, {1, 3}, {0, 2, 3}}, w);
  const std::vector<std::vector<double>> gamma = {{3.0, 1.0, 0.5}, {1.0, 4.0}, {2.0, 2.0, 0.25}};
  EdvwMatrix r = EdvwMatrix::from_edge_lists(h, gamma).normalize(h);
  Matrix p = edvw_transition(h, r).dense();

  // Simulate: pick an incident edge proportional to w(e), then a member
  // proportional to the raw gamma.
  std::mt19937_64 rng(22);
  const int per_start = 250000;  // 10^6 steps in total
  for (Index u = 0; u < 4; ++u) {
    std::vector<double> edge_w;
    for (Index e : h.incident_edges(u)) edge_w.push_back(h.edge_weight(e));
    std::discrete_distribution<std::size_t> pick_edge(edge_w.begin(), edge_w.end());
    Vector counts = Vector::Zero(4);
    for (int s = 0; s < per_start; ++s) {
      const Index e = h.incident_edges(u)[pick_edge(rng)];
      const auto& g = gamma[static_cast<std::size_t>(e)];
      std::discrete_distribution<std::size_t> pick_vertex(g.begin(), g.end());
      counts[h.edge(e)[pick_vertex(rng)]] += 1.0;
    }
    for (Index v = 0; v < 4; ++v) {
      const double est = counts[v] / per_start;
      const double sigma = std::sqrt(std::max(p(u, v) * (1.0 - p(u, v)), 1e-12) / per_start);
      EXPECT_LE(std::abs(est - p(u, v)), 3.0 * sigma + 1e-12) << "u=" << u << " v=" << v;
    }
  }
}

TEST(WalkProperty, RowStochasticAndEivwCollapse) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    Hypergraph h = random_connected_hypergraph(rng, 2 + trial % 29, 60);
    for (const Matrix& p : {zhou_transition(h).dense(), edvw_transition(h, random_edvw(rng, h).normalize(h)).dense()}) {
      EXPECT_LE((p.rowwise().sum().array() - 1.0).abs().maxCoeff(), 1e-10);
      EXPECT_GE(p.minCoeff(), 0.0);
    }
    // Edge-constant vertex weights are an EIVW in disguise.
    std::uniform_real_distribution<double> c(0.1, 10.0);
    std::vector<std::vector<double>> gamma;
    for (const auto& e : h.edges()) gamma.emplace_back(e.size(), c(rng));
    Matrix diff = edvw_transition(h, EdvwMatrix::from_edge_lists(h, gamma).normalize(h)).dense() -
                  zhou_transition(h).dense();
    EXPECT_LE(testing::max_abs(diff), 1e-12);
  }
}

Eigen::SparseMatrix<double> scaled(const Eigen::SparseMatrix<double>& m, double k) { return k * m; }

TEST(UnifiedWalk, Reductions) {
  std::mt19937_64 rng(24);
  Hypergraph h = random_connected_hypergraph(rng, 9, 14);
  const auto y = h.incidence();
  EdvwMatrix r = random_edvw(rng, h).normalize(h);
  Matrix zhou = zhou_transition(h).dense();
  Matrix edvw = edvw_transition(h, r).dense();
  EXPECT_LE(testing::max_abs(unified_transition(h, y, y, EdgeScaling::kInverse).dense() - zhou), 1e-12);
  EXPECT_LE(testing::max_abs(unified_transition(h, y, r.values(), EdgeScaling::kInverse).dense() - edvw), 1e-12);
  EXPECT_EQ(unified_transition(h, y, y, EdgeScaling::kInverse).kind, WalkKind::kUnified);
}

TEST(UnifiedWalk, ProportionalFactorsAreReversible) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    Hypergraph h = random_connected_hypergraph(rng, 6, 9);
    const auto q2 = random_edvw(rng, h).values();
    for (auto rho : {EdgeScaling::kInverse, EdgeScaling::kIdentity}) {
      TransitionMatrix p = unified_transition(h, scaled(q2, 2.0), q2, rho);
      const auto pi = stationary_distribution(p, {.allow_lazy = true});
      EXPECT_LE(is_reversible(p, pi.values, 1e-10).residual, 1e-10);
    }
  }
}

TEST(UnifiedWalk, RejectsShapeMismatch) {
  Hypergraph h(3, {{0, 1}, {1, 2}});
  Eigen::SparseMatrix<double> bad(3, 3);
  EXPECT_THROW(unified_transition(h, bad, h.incidence(), EdgeScaling::kInverse), Error);
  Eigen::SparseMatrix<double> off(3, 2);
  off.insert(2, 0) = 1.0;  // vertex 2 is not in edge 0
  EXPECT_THROW(unified_transition(h, off, h.incidence(), EdgeScaling::kInverse), Error);
}

TEST(Stationary, DoublyStochasticIsUniform) {
  Matrix p(3, 3);
  p << 0.2, 0.5, 0.3, 0.3, 0.2, 0.5, 0.5, 0.3, 0.2;
  const auto pi = stationary_distribution(from_dense(p));
  EXPECT_LE((pi.values.array() - 1.0 / 3.0).abs().maxCoeff(), 1e-12);
}

TEST(Stationary, TwoStateBalance) {
  Matrix p(2, 2);
  p << 0.9, 0.1, 0.5, 0.5;
  const auto pi = stationary_distribution(from_dense(p));
  EXPECT_NEAR(pi.values[0], 5.0 / 6.0, 1e-12);
  EXPECT_NEAR(pi.values[1], 1.0 / 6.0, 1e-12);
  EXPECT_LE(pi.residual, 1e-12);
}

TEST(Stationary, ZhouWalkIsProportionalToDegree) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 10; ++trial) {
    Hypergraph h = random_connected_hypergraph(rng, 15, 25);
    const auto p = zhou_transition(h);
    const auto pi = stationary_distribution(p);
    const Vector expected = h.vertex_degrees() / h.vertex_degrees().sum();
    EXPECT_LE((pi.values - expected).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE(is_reversible(p, pi.values, 1e-10).residual, 1e-10);
  }
}

TEST(Stationary, PeriodicChainNeedsLazyOptIn) {
  Matrix p(2, 2);
  p << 0, 1, 1, 0;
  EXPECT_THROW(stationary_distribution(from_dense(p)), Error);
  const auto pi = stationary_distribution(from_dense(p), {.allow_lazy = true});
  EXPECT_TRUE(pi.used_lazy_chain);
  EXPECT_NEAR(pi.values[0], 0.5, 1e-12);
}

TEST(Stationary, ReducibleChainFails) {
  Matrix p(2, 2);
  p << 1, 0, 0.5, 0.5;
  EXPECT_THROW(stationary_distribution(from_dense(p)), Error);
  EXPECT_FALSE(is_irreducible(SparseMatrix(p.sparseView())));
}

TEST(Stationary, LargeChainUsesPowerIteration) {
  std::mt19937_64 rng(27);
  const auto p = from_dense(Matrix(testing::random_stochastic(rng, 300, 0.05)));
  const auto pi = stationary_distribution(p);
  EXPECT_FALSE(pi.used_dense_solve);
  EXPECT_LE((pi.values.transpose() * p.dense() - pi.values.transpose()).cwiseAbs().sum(), 1e-10);
  EXPECT_NEAR(pi.values.sum(), 1.0, 1e-10);
}

TEST(Reversibility, SymmetricMatrixWithUniformPi) {
  Matrix p(3, 3);
  p << 0.5, 0.25, 0.25, 0.25, 0.5, 0.25, 0.25, 0.25, 0.5;
  const auto check = is_reversible(from_dense(p), Vector::Constant(3, 1.0 / 3.0), 1e-14);
  EXPECT_TRUE(check.reversible);
  EXPECT_EQ(check.residual, 0.0);
}

TEST(Reversibility, SkewedWeightsBreakDetailedBalance) {
  Hypergraph h(3, {{0, 1, 2}, {0, 2}});
  EdvwMatrix r = EdvwMatrix::from_edge_lists(h, {{7.0, 1.0, 1.0}, {1.0, 8.0}}).normalize(h);
  const auto p = edvw_transition(h, r);
  const auto pi = stationary_distribution(p);
  const auto check = is_reversible(p, pi.values, 1e-10);
  EXPECT_FALSE(check.reversible);
  // Direct recomputation of the residual.
  const Matrix d = p.dense();
  double residual = 0.0;
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 3; ++j) residual = std::max(residual, std::abs(pi.values[i] * d(i, j) - pi.values[j] * d(j, i)));
  EXPECT_NEAR(check.residual, residual, 1e-15);
  EXPECT_GT(residual, 0.01);
}

TEST(HittingTimes, GeometricTwoState) {
  const double p01 = 0.3;
  Matrix p(2, 2);
  p << 1 - p01, p01, 0.6, 0.4;
  Matrix h = hitting_times(from_dense(p));
  EXPECT_NEAR(h(0, 1), 1.0 / p01, 1e-12);
  EXPECT_NEAR(h(1, 0), 1.0 / 0.6, 1e-12);
  EXPECT_EQ(h(0, 0), 0.0);
}

TEST(HittingTimes, SymmetricCycle) {
  Matrix p(3, 3);
  p << 0, 0.5, 0.5, 0.5, 0, 0.5, 0.5, 0.5, 0;
  Matrix h = hitting_times(from_dense(p));
  for (Index u = 0; u < 3; ++u)
    for (Index v = 0; v < 3; ++v)
      if (u != v) {
        EXPECT_NEAR(h(u, v), 2.0, 1e-12);
      }
}

TEST(HittingTimes, MatchesMonteCarlo) {
  std::mt19937_64 rng(28);
  const Matrix p(testing::random_stochastic(rng, 5, 0.5));
  const Matrix h = hitting_times(from_dense(p));
  std::vector<std::discrete_distribution<Index>> rows;
  for (Index u = 0; u < 5; ++u) {
    const Vector row = p.row(u).transpose();
    rows.emplace_back(row.data(), row.data() + 5);
  }
  const int walks = 100000;
  for (Index u = 0; u < 5; ++u) {
    for (Index v = 0; v < 5; ++v) {
      if (u == v) continue;
      double sum = 0.0, sum_sq = 0.0;
      for (int w = 0; w < walks; ++w) {
        Index at = u;
        double steps = 0.0;
        while (at != v) {
          at = rows[static_cast<std::size_t>(at)](rng);
          steps += 1.0;
        }
        sum += steps;
        sum_sq += steps * steps;
      }
      const double mean = sum / walks;
      const double se = std::sqrt((sum_sq / walks - mean * mean) / walks);
      EXPECT_LE(std::abs(mean - h(u, v)), 3.0 * se) << u << "->" << v;
    }
  }
}

TEST(HittingTimes, ReducibleChainFails) {
  Matrix p(2, 2);
  p << 1, 0, 0.5, 0.5;
  EXPECT_THROW(hitting_times(from_dense(p)), Error);
}

TEST(RepresentativeDigraph, IdentityHasSelfLoops) {
  const auto arcs = representative_digraph(from_dense(Matrix::Identity(3, 3)));
  ASSERT_EQ(arcs.size(), 3u);
  for (Index k = 0; k < 3; ++k) {
    EXPECT_EQ(arcs[static_cast<std::size_t>(k)].from, k);
    EXPECT_EQ(arcs[static_cast<std::size_t>(k)].to, k);
    EXPECT_EQ(arcs[static_cast<std::size_t>(k)].weight, 1.0);
  }
}

TEST(RepresentativeDigraph, RowMajorPositiveEntries) {
  const auto pair = representative_digraph(zhou_transition(Hypergraph(2, {{0, 1}})));
  ASSERT_EQ(pair.size(), 4u);
  for (const auto& a : pair) EXPECT_EQ(a.weight, 0.5);
  std::mt19937_64 rng(29);
  const auto p = from_dense(Matrix(testing::random_stochastic(rng, 10, 0.3)));
  const auto arcs = representative_digraph(p);
  EXPECT_EQ(static_cast<Index>(arcs.size()), (p.dense().array() > 0).count());
  for (std::size_t k = 1; k < arcs.size(); ++k)
    EXPECT_TRUE(arcs[k - 1].from < arcs[k].from || (arcs[k - 1].from == arcs[k].from && arcs[k - 1].to < arcs[k].to));
}

TEST(Period, DetectsBipartiteAndAperiodic) {
  Matrix cycle4 = Matrix::Zero(4, 4);
  for (Index i = 0; i < 4; ++i) cycle4(i, (i + 1) % 4) = 1.0;
  EXPECT_EQ(chain_period(SparseMatrix(cycle4.sparseView())), 4);
  Matrix bip(2, 2);
  bip << 0, 1, 1, 0;
  EXPECT_EQ(chain_period(SparseMatrix(bip.sparseView())), 2);
  EXPECT_EQ(chain_period(zhou_transition(Hypergraph(3, {{0, 1}, {1, 2}})).values), 1);
}

TEST(LazyChain, KeepsStationaryDistribution) {
  std::mt19937_64 rng(30);
  const auto p = from_dense(Matrix(testing::random_stochastic(rng, 8)));
  const auto lazy = lazy_chain(p);
  EXPECT_LE(testing::max_abs(lazy.dense() - 0.5 * (p.dense() + Matrix::Identity(8, 8))), 1e-15);
  EXPECT_LE((stationary_distribution(lazy).values - stationary_distribution(p).values).cwiseAbs().maxCoeff(), 1e-10);
}

}  // namespace
}  // namespace maghyper
