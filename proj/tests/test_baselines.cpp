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

#include <algorithm>
#include <random>

#include "maghyper/baselines.hpp"
#include "maghyper/generator.hpp"
#include "test_support.hpp"

namespace maghyper {
namespace {

using testing::max_abs;
using testing::random_connected_hypergraph;

// Dense D_V^{-1/2} R W D_E^{-1} R^T D_V^{-1/2} from the incidence lists.
Matrix reference_smoother(const Hypergraph& g, const Matrix& r) {
  const Index n = g.num_vertices();
  Matrix w = Matrix::Zero(g.num_edges(), g.num_edges());
  Vector d = Vector::Zero(n);
  for (Index e = 0; e < g.num_edges(); ++e) {
    w(e, e) = g.edge_weight(e) / static_cast<double>(g.edges()[static_cast<std::size_t>(e)].size());
    for (Index v : g.edges()[static_cast<std::size_t>(e)]) d[v] += g.edge_weight(e);
  }
  const Vector s = d.cwiseSqrt().cwiseInverse();
  return s.asDiagonal() * r * w * r.transpose() * s.asDiagonal();
}

Matrix dense_incidence(const Hypergraph& g) {
  Matrix y = Matrix::Zero(g.num_vertices(), g.num_edges());
  for (Index e = 0; e < g.num_edges(); ++e)
    for (Index v : g.edges()[static_cast<std::size_t>(e)]) y(v, e) = 1.0;
  return y;
}

TEST(Zhou, SingleEdgeIsCenteringMatrix) {
  const Hypergraph g(3, {{0, 1, 2}});
  const Matrix delta(zhou_laplacian(g).laplacian);
  const Matrix expected = Matrix::Identity(3, 3) - Matrix::Constant(3, 3, 1.0 / 3.0);
  EXPECT_LE(max_abs(Matrix(delta - expected)), 1e-15);
}

TEST(Zhou, MatchesDenseFormulaAndKernel) {
  std::mt19937_64 rng(80);
  for (int trial = 0; trial < 30; ++trial) {
    const Hypergraph g = random_connected_hypergraph(rng, 15, 25);
    const auto prop = zhou_laplacian(g);
    EXPECT_EQ(prop.kind, PropagatorKind::kZhou);
    const Matrix smoother = reference_smoother(g, dense_incidence(g));
    EXPECT_LE(max_abs(Matrix(Matrix(prop.propagation) - smoother)), 1e-14);
    const Matrix delta(prop.laplacian);
    EXPECT_LE(max_abs(Matrix(delta - delta.transpose())), 0.0);
    EXPECT_LE(max_abs(Vector(delta * g.vertex_degrees().cwiseSqrt())), 1e-12);
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(delta);
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-12);
    EXPECT_LE(eig.eigenvalues().maxCoeff(), 1.0 + 1e-12);
  }
}

TEST(HgnnStar, UniformWeightsReduceToZhou) {
  std::mt19937_64 rng(81);
  const Hypergraph g = random_connected_hypergraph(rng, 12, 20);
  EXPECT_LE(max_abs(Matrix(Matrix(hgnn_star_laplacian(g, uniform_edvw(g)).laplacian) -
                           Matrix(zhou_laplacian(g).laplacian))),
            1e-15);
}

TEST(HgnnStar, MatchesDenseFormulaAndIsSymmetric) {
  std::mt19937_64 rng(82);
  const Hypergraph g = random_connected_hypergraph(rng, 12, 20);
  const EdvwMatrix r = testing::random_edvw(rng, g).normalize(g);
  const auto prop = hgnn_star_laplacian(g, r);
  const Matrix s(prop.propagation);
  EXPECT_LE(max_abs(Matrix(s - reference_smoother(g, Matrix(r.values())))), 1e-14);
  EXPECT_EQ(s, s.transpose());
  EXPECT_EQ(prop.kind, PropagatorKind::kHgnnStar);
}

TEST(HgnnStar, RejectsMismatchedShape) {
  const Hypergraph g(3, {{0, 1, 2}});
  const Hypergraph other(4, {{0, 1, 2, 3}});
  EXPECT_THROW(hgnn_star_laplacian(g, uniform_edvw(other)), Error);
}

TEST(CliqueGcn, RenormalizedAdjacency) {
  const Hypergraph g(3, {{0, 1}, {1, 2}});
  const Matrix a(clique_gcn_propagator(g).propagation);
  // A + I for the path 0-1-2 has row sums 2, 3, 2.
  Matrix expected(3, 3);
  expected << 0.5, 1 / std::sqrt(6.0), 0, 1 / std::sqrt(6.0), 1.0 / 3.0, 1 / std::sqrt(6.0), 0,
      1 / std::sqrt(6.0), 0.5;
  EXPECT_LE(max_abs(Matrix(a - expected)), 1e-15);
}

TEST(CliqueGcn, SpectrumWithinUnitInterval) {
  std::mt19937_64 rng(83);
  for (int trial = 0; trial < 20; ++trial) {
    const auto prop = clique_gcn_propagator(random_connected_hypergraph(rng, 20, 30));
    const Eigen::SelfAdjointEigenSolver<Matrix> eig{Matrix(prop.propagation)};
    EXPECT_LE(eig.eigenvalues().maxCoeff(), 1.0 + 1e-12);
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1.0 - 1e-12);
    EXPECT_LE(max_abs(Matrix(Matrix(prop.laplacian) + Matrix(prop.propagation) - Matrix::Identity(20, 20))), 1e-15);
  }
}

TEST(RealGcn, IdentityPropagatorIsPerVertex) {
  std::mt19937_64 rng(84);
  ModelConfig config;
  config.hidden_dims = {6, 4};
  config.n_classes = 3;
  const RealNetwork net(Matrix::Identity(8, 8).sparseView(), config);
  const ModelState state = net.initial_state(3);
  std::normal_distribution<double> gauss;
  Matrix x(8, 3);
  for (Index k = 0; k < x.size(); ++k) x.data()[k] = gauss(rng);
  const Matrix before = net.forward(state.params, x).logits;
  x.row(0) *= -3.0;
  const Matrix after = net.forward(state.params, x).logits;
  EXPECT_EQ(before.bottomRows(7), after.bottomRows(7));
}

TEST(KMeans, RecoversSeparatedBlobs) {
  std::mt19937_64 rng(85);
  std::normal_distribution<double> gauss(0.0, 0.1);
  Matrix pts(60, 2);
  for (Index i = 0; i < 60; ++i) {
    pts(i, 0) = 10.0 * static_cast<double>(i % 3) + gauss(rng);
    pts(i, 1) = gauss(rng);
  }
  const auto r = kmeans(pts, 3, 4, 10);
  for (Index i = 0; i < 60; ++i)
    EXPECT_EQ(r.assignment[static_cast<std::size_t>(i)], r.assignment[static_cast<std::size_t>(i % 3)]);
  double inertia = 0.0;
  for (Index i = 0; i < 60; ++i) inertia += (pts.row(i) - r.centers.row(r.assignment[static_cast<std::size_t>(i)])).squaredNorm();
  EXPECT_NEAR(r.inertia, inertia, 1e-12);
  const auto again = kmeans(pts, 3, 4, 10);
  EXPECT_EQ(again.assignment, r.assignment);
  EXPECT_THROW(kmeans(pts, 61, 0, 1), Error);
  EXPECT_THROW(kmeans(pts, 0, 0, 1), Error);
}

std::vector<bool> every_other(Index n) {
  std::vector<bool> mask(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) mask[static_cast<std::size_t>(i)] = i % 2 == 0;
  return mask;
}

TEST(Spectral, TwoCliquesJoinedByABridge) {
  Matrix a = Matrix::Zero(10, 10);
  for (Index u = 0; u < 10; ++u)
    for (Index v = 0; v < 10; ++v)
      if (u != v && u / 5 == v / 5) a(u, v) = 1.0;
  a(4, 5) = a(5, 4) = 1.0;
  std::vector<int> labels(10);
  for (Index u = 0; u < 10; ++u) labels[static_cast<std::size_t>(u)] = static_cast<int>(u / 5);
  const auto r = spectral_clustering_majority(a.sparseView(), 2, labels, every_other(10), 0);
  EXPECT_EQ(r.accuracy, 1.0);
  std::vector<int> expected = labels;
  EXPECT_EQ(r.predicted, expected);
}

TEST(Spectral, SingleClassIsTriviallyPerfect) {
  Matrix a = Matrix::Ones(6, 6) - Matrix::Identity(6, 6);
  const std::vector<int> labels(6, 0);
  const auto r = spectral_clustering_majority(a.sparseView(), 1, labels, every_other(6), 0);
  EXPECT_EQ(r.accuracy, 1.0);
}

TEST(Spectral, PlantedPartitionIsRecovered) {
  std::mt19937_64 rng(86);
  const Index n = 200;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix a = Matrix::Zero(n, n);
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = static_cast<int>(i % 2);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (u(rng) < (i % 2 == j % 2 ? 0.5 : 0.05)) a(i, j) = a(j, i) = 1.0;
  std::vector<bool> mask(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) mask[static_cast<std::size_t>(i)] = i % 4 < 2;
  const auto r = spectral_clustering_majority(a.sparseView(), 2, labels, mask, 3);
  EXPECT_GE(r.accuracy, 0.9);
}

TEST(Spectral, RejectsTooManyClusters) {
  Matrix a = Matrix::Ones(3, 3) - Matrix::Identity(3, 3);
  EXPECT_THROW(spectral_clustering_majority(a.sparseView(), 4, {0, 1, 0}, {true, true, false}, 0), Error);
}

TEST(RealGcn, ZhouPropagatorBeatsMajorityOnInformativeIncidence) {
  GeneratorConfig gen;
  gen.n = 120;
  gen.edges_per_class = 150;
  gen.p_within = 0.9;
  gen.feature_signal = 0.3;
  gen.seed = 5;
  const auto data = generate_planted_hypergraph(gen);
  ModelConfig config;
  config.hidden_dims = {16};
  config.learning_rate = 0.01;
  config.epochs = 100;
  const SplitMask split = random_split(data.labels, 0.5, 1, 0);
  const TrainResult result = train_real_gcn(zhou_laplacian(data.graph), data.features, data.labels, split, config);
  EXPECT_GE(result.test_accuracy, 0.8);
}

}  // namespace
}  // namespace maghyper
