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

#include "maghyper/baselines.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

namespace maghyper {
namespace {

SparseMatrix identity(Index n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

// D_V^{-1/2} R W D_E^{-1} R^T D_V^{-1/2}, symmetrized exactly.
SparseMatrix edge_smoother(const Hypergraph& graph, const Eigen::SparseMatrix<double>& r) {
  const Index n = graph.num_vertices();
  Vector scale(n);
  for (Index v = 0; v < n; ++v) {
    const double d = graph.vertex_degree(v);
    if (d <= 0.0) fail(ErrorCode::kInvalidArgument, "vertex " + std::to_string(v) + " is isolated");
    scale[v] = 1.0 / std::sqrt(d);
  }
  Vector edge_scale(graph.num_edges());
  for (Index e = 0; e < graph.num_edges(); ++e)
    edge_scale[e] = graph.edge_weight(e) / static_cast<double>(graph.edge_degree(e));
  const Eigen::SparseMatrix<double> left = scale.asDiagonal() * r;
  const Eigen::SparseMatrix<double> right = edge_scale.asDiagonal() * Eigen::SparseMatrix<double>(left.transpose());
  SparseMatrix m = left * right;
  SparseMatrix mt = m.transpose();
  SparseMatrix sym = 0.5 * (m + mt);
  sym.prune(0.0);
  return sym;
}

RealPropagator from_smoother(SparseMatrix smoother, PropagatorKind kind) {
  RealPropagator out;
  out.laplacian = identity(smoother.rows()) - smoother;
  out.propagation = std::move(smoother);
  out.kind = kind;
  return out;
}

}  // namespace

RealPropagator zhou_laplacian(const Hypergraph& graph) {
  return from_smoother(edge_smoother(graph, graph.incidence()), PropagatorKind::kZhou);
}

RealPropagator hgnn_star_laplacian(const Hypergraph& graph, const EdvwMatrix& edvw) {
  require(edvw.rows() == graph.num_vertices() && edvw.cols() == graph.num_edges(),
          "EDVW matrix does not match the hypergraph");
  return from_smoother(edge_smoother(graph, edvw.values()), PropagatorKind::kHgnnStar);
}

RealPropagator clique_gcn_propagator(const Hypergraph& graph) {
  const Index n = graph.num_vertices();
  const SparseMatrix a = clique_expansion(graph) + identity(n);
  Vector scale(n);
  for (Index v = 0; v < n; ++v) scale[v] = 1.0 / std::sqrt(a.row(v).sum());
  RealPropagator out;
  out.propagation = scale.asDiagonal() * a * scale.asDiagonal();
  out.laplacian = identity(n) - out.propagation;
  out.kind = PropagatorKind::kCliqueGcn;
  return out;
}

TrainResult train_real_gcn(const RealPropagator& propagator, const Matrix& features,
                           const std::vector<int>& labels, const SplitMask& split,
                           const ModelConfig& config) {
  const RealNetwork network(propagator.propagation, config);
  return train(network, features, labels, split);
}

KMeansResult kmeans(const Matrix& points, Index k, std::uint64_t seed, int restarts, int max_iter) {
  const Index n = points.rows();
  require(k >= 1 && k <= n, "cluster count must lie in [1, n]");
  require(restarts >= 1 && max_iter >= 1, "k-means needs at least one restart and iteration");
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();

  for (int run = 0; run < restarts; ++run) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(run)};
    std::mt19937_64 rng(seq);
    Matrix centers(k, points.cols());
    std::uniform_int_distribution<Index> first(0, n - 1);
    centers.row(0) = points.row(first(rng));
    Vector dist2 = (points.rowwise() - centers.row(0)).rowwise().squaredNorm();
    for (Index c = 1; c < k; ++c) {
      const double total = dist2.sum();
      Index pick = 0;
      if (total > 0.0) {
        std::discrete_distribution<Index> draw(dist2.data(), dist2.data() + n);
        pick = draw(rng);
      } else {
        pick = first(rng);
      }
      centers.row(c) = points.row(pick);
      dist2 = dist2.cwiseMin((points.rowwise() - centers.row(c)).rowwise().squaredNorm());
    }

    std::vector<Index> assign(static_cast<std::size_t>(n), -1);
    Vector nearest(n);
    for (int it = 0; it < max_iter; ++it) {
      bool changed = false;
      for (Index i = 0; i < n; ++i) {
        Index arg = 0;
        nearest[i] = (centers.rowwise() - points.row(i)).rowwise().squaredNorm().minCoeff(&arg);
        if (assign[static_cast<std::size_t>(i)] != arg) {
          assign[static_cast<std::size_t>(i)] = arg;
          changed = true;
        }
      }
      if (!changed && it > 0) break;
      Matrix sums = Matrix::Zero(k, points.cols());
      std::vector<Index> counts(static_cast<std::size_t>(k), 0);
      for (Index i = 0; i < n; ++i) {
        sums.row(assign[static_cast<std::size_t>(i)]) += points.row(i);
        ++counts[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])];
      }
      for (Index c = 0; c < k; ++c) {
        if (counts[static_cast<std::size_t>(c)] > 0) {
          centers.row(c) = sums.row(c) / static_cast<double>(counts[static_cast<std::size_t>(c)]);
        } else {
          // Empty cluster: move it to the worst-served point.
          Index far = 0;
          nearest.maxCoeff(&far);
          centers.row(c) = points.row(far);
          nearest[far] = 0.0;
        }
      }
    }
    double inertia = 0.0;
    for (Index i = 0; i < n; ++i)
      inertia += (points.row(i) - centers.row(assign[static_cast<std::size_t>(i)])).squaredNorm();
    if (inertia < best.inertia) {
      best.inertia = inertia;
      best.assignment = std::move(assign);
      best.centers = std::move(centers);
    }
  }
  return best;
}

ClusteringResult spectral_clustering_majority(const SparseMatrix& adjacency, Index k,
                                              const std::vector<int>& labels,
                                              const std::vector<bool>& train_mask,
                                              std::uint64_t seed, int restarts) {
  const Index n = adjacency.rows();
  require(adjacency.cols() == n, "adjacency must be square");
  require(k >= 1 && k <= n, "cluster count must lie in [1, n]");
  require(static_cast<Index>(labels.size()) == n && static_cast<Index>(train_mask.size()) == n,
          "labels and mask must have one entry per vertex");
  int n_classes = 0;
  for (int y : labels) n_classes = std::max(n_classes, y + 1);
  require(k >= n_classes, "cluster count must be at least the number of classes");

  Vector inv_sqrt(n);
  for (Index v = 0; v < n; ++v) {
    const double d = adjacency.row(v).sum();
    inv_sqrt[v] = d > 0.0 ? 1.0 / std::sqrt(d) : 0.0;
  }
  Matrix lap = -(inv_sqrt.asDiagonal() * Matrix(adjacency) * inv_sqrt.asDiagonal());
  lap.diagonal().array() += 1.0;
  lap = 0.5 * (lap + lap.transpose()).eval();
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(lap);
  if (eig.info() != Eigen::Success) fail(ErrorCode::kNumerical, "Laplacian eigensolve failed");
  Matrix embed = eig.eigenvectors().leftCols(k);
  for (Index v = 0; v < n; ++v) {
    const double norm = embed.row(v).norm();
    if (norm > 0.0) embed.row(v) /= norm;
  }

  ClusteringResult out;
  const KMeansResult km = kmeans(embed, k, seed, restarts);
  out.clusters = km.assignment;
  out.inertia = km.inertia;

  std::vector<std::vector<Index>> votes(static_cast<std::size_t>(k),
                                        std::vector<Index>(static_cast<std::size_t>(n_classes), 0));
  std::vector<Index> global(static_cast<std::size_t>(n_classes), 0);
  for (Index v = 0; v < n; ++v) {
    const int y = labels[static_cast<std::size_t>(v)];
    if (!train_mask[static_cast<std::size_t>(v)] || y < 0) continue;
    ++votes[static_cast<std::size_t>(out.clusters[static_cast<std::size_t>(v)])][static_cast<std::size_t>(y)];
    ++global[static_cast<std::size_t>(y)];
  }
  require(std::any_of(global.begin(), global.end(), [](Index c) { return c > 0; }),
          "training mask contains no labeled vertex");
  const auto majority = [](const std::vector<Index>& counts) {
    return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
  };
  const int fallback = majority(global);
  std::vector<int> cluster_label(static_cast<std::size_t>(k));
  for (Index c = 0; c < k; ++c) {
    const auto& counts = votes[static_cast<std::size_t>(c)];
    const bool empty = std::all_of(counts.begin(), counts.end(), [](Index x) { return x == 0; });
    cluster_label[static_cast<std::size_t>(c)] = empty ? fallback : majority(counts);
  }

  out.predicted.resize(static_cast<std::size_t>(n));
  Index total = 0;
  Index correct = 0;
  for (Index v = 0; v < n; ++v) {
    const int pred = cluster_label[static_cast<std::size_t>(out.clusters[static_cast<std::size_t>(v)])];
    out.predicted[static_cast<std::size_t>(v)] = pred;
    const int y = labels[static_cast<std::size_t>(v)];
    if (train_mask[static_cast<std::size_t>(v)] || y < 0) continue;
    ++total;
    if (pred == y) ++correct;
  }
  require(total > 0, "no labeled vertex outside the training mask");
  out.accuracy = static_cast<double>(correct) / static_cast<double>(total);
  return out;
}

}  // namespace maghyper
