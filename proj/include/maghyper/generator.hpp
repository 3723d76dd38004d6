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

namespace maghyper {

/// Planted-partition hypergraph whose class signal sits mostly in the EDVW.
///
/// Each planted hyperedge has a seed class. A member is drawn from the seed
/// class with probability p_within and from another class otherwise; with
/// probability p_noise the whole edge is replaced by a uniformly random one.
/// The edge's owner is its majority class (ties go to the seed class).
/// Owner-class members carry EDVW exp(direction_signal * (skew + j)) with j
/// uniform in [-0.1, 0.1]; every other member, and every member of a noise
/// edge, carries 1. Walks therefore flow toward owners, and owner/non-owner
/// pairs are asymmetric. direction_signal = 0 yields edge-independent weights.
///
/// Features are x_v = feature_signal * e_{y_v} + N(0, I): a one-hot class
/// indicator buried in unit Gaussian noise.
///
/// The defaults give an incidence structure that carries no class information
/// (p_within = 0.5) while the vertex weights do.
struct GeneratorConfig {
  Index n = 400;
  Index n_classes = 2;
  Index edges_per_class = 3000;
  Index edge_size_min = 3;
  Index edge_size_max = 5;
  double p_within = 0.5;
  double p_noise = 0.0;
  double direction_signal = 0.8;
  double skew = 8.0;
  Index feature_dim = 4;
  double feature_signal = 0.55;
  std::uint64_t seed = 0;

  void validate() const;
};

struct PlantedHypergraph {
  Hypergraph graph;
  EdvwMatrix edvw;          // raw weights, not normalized
  Matrix features;
  std::vector<int> labels;  // exactly balanced up to n mod n_classes
  std::vector<int> edge_owner;  // majority class, -1 for noise edges
};

/// Resamples (up to a fixed number of attempts) until the hypergraph is
/// connected.
PlantedHypergraph generate_planted_hypergraph(const GeneratorConfig& config);

}  // namespace maghyper
