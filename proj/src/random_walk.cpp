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

#include "maghyper/random_walk.hpp"

#include <cmath>
#include <numeric>
#include <queue>
#include <string>

namespace maghyper {
namespace {

// D_V^-1 Y W rho(D_E) Q^T. Shared by the Zhou and EDVW walks so that a
// uniform EDVW reproduces the Zhou matrix bit for bit.
SparseMatrix walk_product(const Hypergraph& graph, const Eigen::SparseMatrix<double>& left,
                          const Eigen::SparseMatrix<double>& right, EdgeScaling rho) {
  for (Index v = 0; v < graph.num_vertices(); ++v)
    if (graph.incident_edges(v).empty())
      fail(ErrorCode::kInvalidArgument, "vertex " + std::to_string(v) + " is isolated");
  Vector edge_scale(graph.num_edges());
  for (Index e = 0; e < graph.num_edges(); ++e) {
    const double delta = static_cast<double>(graph.edge_degree(e));
    edge_scale[e] = graph.edge_weight(e) * (rho == EdgeScaling::kInverse ? 1.0 / delta : delta);
  }
  const Vector inv_degree = graph.vertex_degrees().cwiseInverse();
  Eigen::SparseMatrix<double> scaled = inv_degree.asDiagonal() * left * edge_scale.asDiagonal();
  SparseMatrix p = scaled * right.transpose();
  p.prune(0.0);
  p.makeCompressed();
  return p;
}

void check_support(const Hypergraph& graph, const Eigen::SparseMatrix<double>& q,
                   const char* name) {
  require(q.rows() == graph.num_vertices() && q.cols() == graph.num_edges(),
          std::string(name) + " must be " + std::to_string(graph.num_vertices()) + " x " +
              std::to_string(graph.num_edges()));
  for (Index e = 0; e < q.outerSize(); ++e) {
    const auto& members = graph.edge(e);
    for (Eigen::SparseMatrix<double>::InnerIterator it(q, e); it; ++it) {
      if (it.value() == 0.0) continue;
      require(it.value() > 0.0, std::string(name) + " has a negative entry");
      require(std::binary_search(members.begin(), members.end(), it.row()),
              std::string(name) + " entry (" + std::to_string(it.row()) + ", " +
                  std::to_string(e) + ") lies outside the incidence pattern");
    }
  }
}

std::vector<bool> reachable(const SparseMatrix& adj, Index source) {
  std::vector<bool> seen(static_cast<std::size_t>(adj.rows()), false);
  std::vector<Index> stack{source};
  seen[static_cast<std::size_t>(source)] = true;
  while (!stack.empty()) {
    const Index u = stack.back();
    stack.pop_back();
    for (SparseMatrix::InnerIterator it(adj, u); it; ++it) {
      if (it.value() <= 0.0 || seen[static_cast<std::size_t>(it.col())]) continue;
      seen[static_cast<std::size_t>(it.col())] = true;
      stack.push_back(it.col());
    }
  }
  return seen;
}

double stationarity_residual(const SparseMatrix& p, const Vector& pi) {
  return (p.transpose() * pi - pi).lpNorm<1>();
}

Vector dense_stationary(const SparseMatrix& p) {
  const Index n = p.rows();
  Matrix a = Matrix(p.transpose()) - Matrix::Identity(n, n);
  a.row(n - 1).setOnes();
  Vector b = Vector::Zero(n);
  b[n - 1] = 1.0;
  return a.fullPivLu().solve(b);
}

}  // namespace

TransitionMatrix zhou_transition(const Hypergraph& graph) {
  const auto y = graph.incidence();
  return {walk_product(graph, y, y, EdgeScaling::kInverse), WalkKind::kZhou};
}

TransitionMatrix edvw_transition(const Hypergraph& graph, const EdvwMatrix& edvw) {
  require(edvw.rows() == graph.num_vertices() && edvw.cols() == graph.num_edges(),
          "EDVW matrix does not match the hypergraph");
  require(edvw.normalized(),
          "EDVW matrix is not normalized; call EdvwMatrix::normalize so each column sums to |e|");
  for (Index e = 0; e < edvw.cols(); ++e)
    require(edvw.values().col(e).sum() > 0.0, "EDVW column " + std::to_string(e) + " is zero");
  return {walk_product(graph, graph.incidence(), edvw.values(), EdgeScaling::kInverse),
          WalkKind::kEdvw};
}

TransitionMatrix unified_transition(const Hypergraph& graph, const Eigen::SparseMatrix<double>& q1,
                                    const Eigen::SparseMatrix<double>& q2, EdgeScaling rho) {
  check_support(graph, q1, "Q1");
  check_support(graph, q2, "Q2");
  SparseMatrix p = walk_product(graph, q1, q2, rho);
  for (Index v = 0; v < p.rows(); ++v) {
    const double total = p.row(v).sum();
    if (!(total > 0.0))
      fail(ErrorCode::kInvalidArgument,
           "vertex " + std::to_string(v) + " has no outgoing probability under Q1, Q2");
    p.row(v) /= total;
  }
  return {std::move(p), WalkKind::kUnified};
}

TransitionMatrix lazy_chain(const TransitionMatrix& p) {
  SparseMatrix identity(p.size(), p.size());
  identity.setIdentity();
  SparseMatrix lazy = 0.5 * (p.values + identity);
  lazy.makeCompressed();
  return {std::move(lazy), p.kind};
}

bool is_irreducible(const SparseMatrix& p) {
  if (p.rows() == 0) return true;
  const SparseMatrix reverse = p.transpose();
  const auto forward = reachable(p, 0);
  const auto backward = reachable(reverse, 0);
  return std::all_of(forward.begin(), forward.end(), [](bool b) { return b; }) &&
         std::all_of(backward.begin(), backward.end(), [](bool b) { return b; });
}

Index chain_period(const SparseMatrix& p) {
  require(is_irreducible(p), "period is defined for irreducible chains only");
  const Index n = p.rows();
  std::vector<Index> level(static_cast<std::size_t>(n), -1);
  std::queue<Index> queue;
  level[0] = 0;
  queue.push(0);
  Index period = 0;
  while (!queue.empty()) {
    const Index u = queue.front();
    queue.pop();
    for (SparseMatrix::InnerIterator it(p, u); it; ++it) {
      if (it.value() <= 0.0) continue;
      auto& lv = level[static_cast<std::size_t>(it.col())];
      if (lv < 0) {
        lv = level[static_cast<std::size_t>(u)] + 1;
        queue.push(it.col());
      } else {
        period = std::gcd(period, std::abs(level[static_cast<std::size_t>(u)] + 1 - lv));
      }
    }
  }
  return period == 0 ? 1 : period;
}

StationaryDistribution stationary_distribution(const TransitionMatrix& p,
                                               const StationaryOptions& options) {
  const Index n = p.size();
  require(n > 0, "empty transition matrix");
  if (!is_irreducible(p.values))
    fail(ErrorCode::kNumerical, "chain is reducible: the transition digraph is not strongly connected");

  StationaryDistribution out;
  const Index period = chain_period(p.values);
  SparseMatrix iterate = p.values;
  if (period > 1) {
    if (!options.allow_lazy)
      fail(ErrorCode::kNumerical, "chain is periodic with period " + std::to_string(period) +
                                      "; enable the lazy chain to iterate on (P + I) / 2");
    iterate = lazy_chain(p).values;
    out.used_lazy_chain = true;
  }

  const SparseMatrix iterate_t = iterate.transpose();
  Vector pi = Vector::Constant(n, 1.0 / static_cast<double>(n));
  bool converged = false;
  for (Index k = 0; k < options.max_iter; ++k) {
    Vector next = iterate_t * pi;
    next /= next.sum();
    const double change = (next - pi).lpNorm<1>();
    pi = std::move(next);
    out.iterations = k + 1;
    if (change <= options.tol) {
      converged = true;
      break;
    }
  }
  if (!converged && n <= 200) {
    pi = dense_stationary(p.values);
    pi /= pi.sum();
    out.used_dense_solve = true;
    converged = stationarity_residual(p.values, pi) <= std::max(options.tol, 1e-10);
  }
  out.residual = stationarity_residual(p.values, pi);
  if (!converged)
    fail(ErrorCode::kNumerical, "stationary distribution did not converge in " +
                                    std::to_string(options.max_iter) + " iterations (residual " +
                                    std::to_string(out.residual) + ")");
  out.values = std::move(pi);
  return out;
}

ReversibilityCheck is_reversible(const TransitionMatrix& p, const Vector& pi, double tol) {
  require(pi.size() == p.size(), "stationary vector length does not match the chain");
  const SparseMatrix pt = p.values.transpose();
  double residual = 0.0;
  for (Index i = 0; i < p.size(); ++i) {
    // Union of the supports of row i in P and in P^T covers every nonzero pair.
    for (SparseMatrix::InnerIterator it(p.values, i); it; ++it) {
      const Index j = it.col();
      residual = std::max(residual, std::abs(pi[i] * it.value() - pi[j] * pt.coeff(i, j)));
    }
    for (SparseMatrix::InnerIterator it(pt, i); it; ++it) {
      const Index j = it.col();
      residual = std::max(residual, std::abs(pi[i] * p.values.coeff(i, j) - pi[j] * it.value()));
    }
  }
  return {residual <= tol, residual};
}

Matrix hitting_times(const TransitionMatrix& p) {
  const Index n = p.size();
  if (!is_irreducible(p.values))
    fail(ErrorCode::kNumerical, "hitting times are singular for a reducible chain");
  StationaryOptions options;
  options.allow_lazy = true;
  const Vector pi = stationary_distribution(p, options).values;

  // Fundamental matrix Z = (I - P + 1 pi^T)^-1; h(u, v) = (Z_vv - Z_uv) / pi_v.
  Matrix a = Matrix::Identity(n, n) - p.dense();
  a.rowwise() += pi.transpose();
  const Eigen::PartialPivLU<Matrix> lu(a);
  const Matrix z = lu.solve(Matrix::Identity(n, n));
  if (!z.allFinite()) fail(ErrorCode::kNumerical, "hitting-time system is singular");
  Matrix h(n, n);
  for (Index v = 0; v < n; ++v) {
    for (Index u = 0; u < n; ++u) h(u, v) = (z(v, v) - z(u, v)) / pi[v];
    h(v, v) = 0.0;
  }
  return h;
}

std::vector<WeightedArc> representative_digraph(const TransitionMatrix& p) {
  std::vector<WeightedArc> arcs;
  arcs.reserve(static_cast<std::size_t>(p.values.nonZeros()));
  for (Index u = 0; u < p.size(); ++u)
    for (SparseMatrix::InnerIterator it(p.values, u); it; ++it)
      if (it.value() > 0.0) arcs.push_back({u, it.col(), it.value()});
  return arcs;
}

}  // namespace maghyper
