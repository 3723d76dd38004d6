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

#include "maghyper/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "maghyper/random_walk.hpp"

namespace maghyper {
namespace {

constexpr int kMaxAttempts = 16;
constexpr double kJitter = 0.1;

struct Draw {
  Hypergraph graph;
  EdvwMatrix edvw;
  std::vector<int> edge_owner;
};

Draw draw_edges(const GeneratorConfig& cfg, const std::vector<int>& labels, std::mt19937_64& rng) {
  const Index n = cfg.n;
  const auto n_classes = static_cast<std::size_t>(cfg.n_classes);
  std::vector<std::vector<Index>> members_of(n_classes);
  for (Index v = 0; v < n; ++v) members_of[static_cast<std::size_t>(labels[static_cast<std::size_t>(v)])].push_back(v);

  std::bernoulli_distribution noise(cfg.p_noise);
  std::bernoulli_distribution within(cfg.p_within);
  std::uniform_int_distribution<Index> size_dist(cfg.edge_size_min, cfg.edge_size_max);
  std::uniform_int_distribution<Index> any_vertex(0, n - 1);
  std::uniform_int_distribution<std::size_t> other_class(0, n_classes - 2);
  std::uniform_real_distribution<double> jitter(-kJitter, kJitter);
  const double strength = cfg.skew * cfg.direction_signal;

  std::vector<std::vector<Index>> edges;
  std::vector<std::vector<double>> gammas;
  std::vector<int> owners;
  for (std::size_t c = 0; c < n_classes; ++c) {
    for (Index k = 0; k < cfg.edges_per_class; ++k) {
      const Index size = size_dist(rng);
      std::size_t c_owner = c;
      const bool is_noise = noise(rng);
      std::vector<Index> members;
      std::vector<std::size_t> member_class;
      while (static_cast<Index>(members.size()) < size) {
        Index v = 0;
        if (is_noise) {
          v = any_vertex(rng);
        } else {
          std::size_t cls = c;
          if (!within(rng)) {
            cls = other_class(rng);
            if (cls >= c) ++cls;
          }
          const auto& pool = members_of[cls];
          v = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        }
        if (std::find(members.begin(), members.end(), v) != members.end()) continue;
        members.push_back(v);
        member_class.push_back(static_cast<std::size_t>(labels[static_cast<std::size_t>(v)]));
      }
      // The owner is the edge's majority class; ties go to the planted class.
      std::vector<Index> counts(n_classes, 0);
      for (std::size_t cls : member_class) ++counts[cls];
      std::size_t owner = c;
      for (std::size_t cls = 0; cls < n_classes; ++cls)
        if (counts[cls] > counts[owner]) owner = cls;
      std::vector<double> gamma;
      for (std::size_t cls : member_class)
        gamma.push_back(!is_noise && cls == owner ? std::exp(strength + cfg.direction_signal * jitter(rng)) : 1.0);
      c_owner = owner;
      edges.push_back(std::move(members));
      gammas.push_back(std::move(gamma));
      owners.push_back(is_noise ? -1 : static_cast<int>(c_owner));
    }
  }

  // Cover every vertex: join a random planted edge of its own class as an owner.
  std::vector<bool> covered(static_cast<std::size_t>(n), false);
  for (const auto& e : edges)
    for (Index v : e) covered[static_cast<std::size_t>(v)] = true;
  for (Index v = 0; v < n; ++v) {
    if (covered[static_cast<std::size_t>(v)]) continue;
    const int y = labels[static_cast<std::size_t>(v)];
    std::vector<std::size_t> candidates;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (owners[e] == y) candidates.push_back(e);
    if (candidates.empty())
      fail(ErrorCode::kInvalidArgument, "vertex " + std::to_string(v) + " cannot be covered by a planted edge");
    const auto e = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
    edges[e].push_back(v);
    gammas[e].push_back(std::exp(strength + cfg.direction_signal * jitter(rng)));
  }

  Draw out;
  out.graph = Hypergraph(n, edges);
  out.edvw = EdvwMatrix::from_edge_lists(out.graph, [&] {
    // from_edge_lists expects values in sorted member order.
    std::vector<std::vector<double>> sorted(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      std::vector<std::size_t> order(edges[e].size());
      for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return edges[e][a] < edges[e][b]; });
      for (std::size_t k : order) sorted[e].push_back(gammas[e][k]);
    }
    return sorted;
  }());
  out.edge_owner = std::move(owners);
  return out;
}

}  // namespace

void GeneratorConfig::validate() const {
  require(n_classes >= 2, "generator needs at least two classes");
  require(n >= 2 * n_classes, "generator needs at least two vertices per class");
  require(edges_per_class >= 1, "edges_per_class must be positive");
  require(edge_size_min >= 2 && edge_size_max >= edge_size_min, "edge sizes must satisfy 2 <= min <= max");
  require(edge_size_max <= n / n_classes, "edges cannot be larger than a class");
  require(p_within > 0.0 && p_within <= 1.0, "p_within must lie in (0, 1]");
  require(p_noise >= 0.0 && p_noise < 1.0, "p_noise must lie in [0, 1)");
  require(direction_signal >= 0.0 && direction_signal <= 1.0, "direction_signal must lie in [0, 1]");
  require(skew >= 0.0 && std::isfinite(skew), "skew must be nonnegative");
  require(feature_dim >= n_classes, "feature_dim must be at least n_classes");
  require(feature_signal >= 0.0 && std::isfinite(feature_signal), "feature_signal must be nonnegative");
}

PlantedHypergraph generate_planted_hypergraph(const GeneratorConfig& config) {
  config.validate();
  std::mt19937_64 rng(config.seed);

  PlantedHypergraph out;
  out.labels.resize(static_cast<std::size_t>(config.n));
  for (Index v = 0; v < config.n; ++v)
    out.labels[static_cast<std::size_t>(v)] = static_cast<int>(v % config.n_classes);
  std::shuffle(out.labels.begin(), out.labels.end(), rng);

  std::normal_distribution<double> gauss(0.0, 1.0);
  out.features.resize(config.n, config.feature_dim);
  for (Index v = 0; v < config.n; ++v)
    for (Index k = 0; k < config.feature_dim; ++k)
      out.features(v, k) = gauss(rng);
  for (Index v = 0; v < config.n; ++v)
    out.features(v, out.labels[static_cast<std::size_t>(v)]) += config.feature_signal;

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Draw d = draw_edges(config, out.labels, rng);
    if (!is_irreducible(zhou_transition(d.graph).values)) continue;
    out.graph = std::move(d.graph);
    out.edvw = std::move(d.edvw);
    out.edge_owner = std::move(d.edge_owner);
    return out;
  }
  fail(ErrorCode::kInvalidArgument, "could not draw a connected hypergraph; raise edges_per_class");
}

}  // namespace maghyper
