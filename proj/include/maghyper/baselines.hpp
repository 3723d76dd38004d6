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

#include <cstdint>
#include <vector>

#include "maghyper/common.hpp"
#include "maghyper/hypergraph.hpp"
#include "maghyper/network.hpp"

namespace maghyper {

enum class PropagatorKind { kZhou, kHgnnStar, kCliqueGcn };

/// Symmetric graph-reduction operator. `propagation` is the smoothing form
/// used inside network layers; `laplacian` is I - propagation for the
/// hypergraph forms and the normalized Laplacian of the renormalized
/// adjacency for the clique form.
struct RealPropagator {
  SparseMatrix propagation;
  SparseMatrix laplacian;
  PropagatorKind kind = PropagatorKind::kZhou;
};

/// I - D_V^{-1/2} Y W D_E^{-1} Y^T D_V^{-1/2}.
RealPropagator zhou_laplacian(const Hypergraph& graph);

/// Same form with the EDVW matrix in place of the incidence matrix. The
/// values are used as given; pass a normalized matrix for the walk-consistent
/// scaling.
RealPropagator hgnn_star_laplacian(const Hypergraph& graph, const EdvwMatrix& edvw);

/// D~^{-1/2} (A + I) D~^{-1/2} over the loop-free clique expansion A.
RealPropagator clique_gcn_propagator(const Hypergraph& graph);

TrainResult train_real_gcn(const RealPropagator& propagator, const Matrix& features,
                           const std::vector<int>& labels, const SplitMask& split,
                           const ModelConfig& config);

struct ClusteringResult {
  std::vector<Index> clusters;   // cluster of each vertex
  std::vector<int> predicted;    // majority-vote label of each vertex
  double inertia = 0.0;          // best k-means objective
  double accuracy = 0.0;         // over labeled vertices outside the training mask
};

/// Bottom-k eigenvectors of I - D^{-1/2} A D^{-1/2}, rows scaled to unit
/// length, k-means++ with 50 seeded restarts. Each cluster takes the majority
/// training label inside it (ties to the smaller label); clusters without
/// training vertices take the global training majority.
ClusteringResult spectral_clustering_majority(const SparseMatrix& adjacency, Index k,
                                              const std::vector<int>& labels,
                                              const std::vector<bool>& train_mask,
                                              std::uint64_t seed, int restarts = 50);

struct KMeansResult {
  std::vector<Index> assignment;
  Matrix centers;
  double inertia = 0.0;
};

/// Lloyd iterations from k-means++ seeds; the lowest-inertia restart wins.
KMeansResult kmeans(const Matrix& points, Index k, std::uint64_t seed, int restarts,
                    int max_iter = 300);

}  // namespace maghyper
