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

#include <vector>

#include "maghyper/hypergraph.hpp"

namespace maghyper {

enum class WalkKind { kZhou, kEdvw, kUnified };

/// Row-stochastic transition matrix of a hypergraph random walk. Its positive
/// entries are the arcs of the representative digraph.
struct TransitionMatrix {
  SparseMatrix values;
  WalkKind kind = WalkKind::kEdvw;

  Index size() const { return values.rows(); }
  Matrix dense() const { return Matrix(values); }
};

/// Zhou walk: pick an incident edge proportional to w(e), then a member
/// uniformly. P = D_V^-1 Y W D_E^-1 Y^T. Throws naming the first isolated
/// vertex.
TransitionMatrix zhou_transition(const Hypergraph& graph);

/// EDVW walk: pick an incident edge proportional to w(e), then a member
/// proportional to gamma_e. P = D_V^-1 Y W D_E^-1 R^T, which requires R to be
/// normalized (column e sums to |e|).
TransitionMatrix edvw_transition(const Hypergraph& graph, const EdvwMatrix& edvw);

enum class EdgeScaling { kInverse, kIdentity };

/// P = D_V^-1 Q1 W rho(D_E) Q2^T followed by row normalization. Q1 and Q2
/// are n x m and must be supported on the incidence pattern.
TransitionMatrix unified_transition(const Hypergraph& graph, const Eigen::SparseMatrix<double>& q1,
                                    const Eigen::SparseMatrix<double>& q2, EdgeScaling rho);

/// (P + I) / 2. Same stationary distribution, always aperiodic.
TransitionMatrix lazy_chain(const TransitionMatrix& p);

struct StationaryOptions {
  double tol = 1e-12;
  Index max_iter = 100000;
  bool allow_lazy = false;  // iterate on (P + I) / 2 if P is periodic
};

struct StationaryDistribution {
  Vector values;
  double residual = 0.0;  // || pi P - pi ||_1 against the original P
  bool used_lazy_chain = false;
  bool used_dense_solve = false;
  Index iterations = 0;
};

/// Power iteration on pi <- pi P, with a dense linear solve as fallback for
/// n <= 200. Throws on reducible chains, on periodic chains unless
/// `allow_lazy` is set, and on non-convergence (message carries the residual).
StationaryDistribution stationary_distribution(const TransitionMatrix& p,
                                               const StationaryOptions& options = {});

struct ReversibilityCheck {
  bool reversible = false;
  double residual = 0.0;  // max_ij | pi_i P_ij - pi_j P_ji |
};

ReversibilityCheck is_reversible(const TransitionMatrix& p, const Vector& pi, double tol);

/// Expected steps from u to first reach v; zero on the diagonal.
Matrix hitting_times(const TransitionMatrix& p);

struct WeightedArc {
  Index from;
  Index to;
  double weight;
};

/// Arcs (u, v, P_uv) for every P_uv > 0, in row-major order.
std::vector<WeightedArc> representative_digraph(const TransitionMatrix& p);

/// Strong connectivity of the digraph on positive entries.
bool is_irreducible(const SparseMatrix& p);

/// Period of an irreducible chain (1 means aperiodic).
Index chain_period(const SparseMatrix& p);

}  // namespace maghyper
