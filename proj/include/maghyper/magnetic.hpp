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

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "maghyper/common.hpp"

namespace maghyper {

/// Charge used in the phase 2 pi q (P_uv - P_vu): either one scalar q or a
/// symmetric matrix Q with one value per unordered pair on the support of
/// P_s = (P + P^T) / 2.
class ChargeParams {
 public:
  static ChargeParams scalar(double q);

  /// Q must be symmetric; entries off the support of P_s have no effect.
  static ChargeParams matrix(SparseMatrix q);

  /// Q = `value` on every off-diagonal entry of the support of P_s.
  static ChargeParams constant_over_support(const SparseMatrix& p, double value);

  bool is_scalar() const { return !matrix_.has_value(); }
  double q() const { return q_; }
  const SparseMatrix& matrix() const { return *matrix_; }

  /// Charge acting on the pair (u, v).
  double at(Index u, Index v) const;

 private:
  double q_ = 0.0;
  std::optional<SparseMatrix> matrix_;
};

struct Symmetrized {
  SparseMatrix ps;   // (P + P^T) / 2
  Vector degrees;    // row sums of ps
};

/// Throws if a vertex has no neighbours in P_s.
Symmetrized symmetrize(const SparseMatrix& p);

/// Theta = 2 pi Q (.) (P - P^T), stored on the pattern of P_s. Exactly
/// skew-symmetric.
SparseMatrix phase_matrix(const SparseMatrix& p, const ChargeParams& charge);

/// H = P_s (.) exp(i Theta).
CSparseMatrix hermitian_adjacency(const SparseMatrix& p, const ChargeParams& charge);

enum class LaplacianForm { kNormalized, kUnnormalized };

struct MagneticLaplacian {
  CSparseMatrix laplacian;
  SparseMatrix symmetrized;
  Vector degrees;
  SparseMatrix phase;
  LaplacianForm form = LaplacianForm::kNormalized;
  std::optional<double> lambda_max;
  std::optional<CSparseMatrix> renormalized;  // (2 / lambda_max) L - I

  Index size() const { return laplacian.rows(); }
  CMatrix dense() const { return CMatrix(laplacian); }
};

/// Normalized: L = I - (D_s^-1/2 P_s D_s^-1/2) (.) exp(i Theta).
/// Unnormalized: L = D_s - H. With `renormalize`, lambda_max is found by
/// Lanczos (tolerance 1e-9) and the rescaled operator is cached.
MagneticLaplacian magnetic_laplacian(const SparseMatrix& p, const ChargeParams& charge,
                                     LaplacianForm form = LaplacianForm::kNormalized,
                                     bool renormalize = false);

struct ExtremeEigenpair {
  double value = 0.0;
  CVector vector;
  double residual = 0.0;  // || A v - value v ||_2
  Index iterations = 0;
};

/// Largest eigenvalue of a Hermitian matrix by restarted Lanczos with full
/// reorthogonalization. Deterministic start vector. Throws with the residual
/// if `tol` (relative to max(1, |value|)) is not reached.
ExtremeEigenpair largest_eigenpair(const CSparseMatrix& a, double tol = 1e-9,
                                   Index max_restarts = 100);

struct SpectralDecomposition {
  CMatrix vectors;  // unitary, columns are eigenvectors
  Vector values;    // ascending
};

SpectralDecomposition spectral_decomposition(const MagneticLaplacian& laplacian);
SpectralDecomposition spectral_decomposition(const CMatrix& hermitian);

/// x_hat = Phi^* x.
CVector fourier_transform(const CVector& x, const CMatrix& basis);
/// x = Phi x_hat.
CVector inverse_fourier(const CVector& x_hat, const CMatrix& basis);
/// y * x = Phi Diag(Phi^* y) Phi^* x.
CVector convolve(const CVector& y, const CVector& x, const CMatrix& basis);

/// Fixed sparsity data for the first-order propagation operator
///   A = D~^-1/2 (P_s + I) D~^-1/2 (.) exp(i Theta),
/// laid out so that A can be rebuilt cheaply for new charges and so that the
/// charge gradient can be accumulated entry by entry.
class PropagationPattern {
 public:
  explicit PropagationPattern(const SparseMatrix& p);

  Index size() const { return n_; }
  Index nonzeros() const { return static_cast<Index>(cols_.size()); }
  Index num_pairs() const { return static_cast<Index>(pairs_.size()); }

  /// Unordered off-diagonal pairs (u < v), one learnable charge each.
  const std::vector<std::array<Index, 2>>& pairs() const { return pairs_; }

  /// Pair id of every stored entry in row-major order, -1 when the entry
  /// carries no phase (diagonal).
  const std::vector<Index>& entry_pairs() const { return entry_pair_; }

  /// Real magnitude D~^-1/2 (P_s + I) D~^-1/2 at every stored entry.
  const std::vector<double>& magnitudes() const { return magnitude_; }

  /// P_uv - P_vu at every stored entry.
  const std::vector<double>& asymmetry() const { return asymmetry_; }

  /// Real operator (no phase).
  SparseMatrix real_operator() const;

  CSparseMatrix assemble(const ChargeParams& charge) const;
  CSparseMatrix assemble(double q) const;
  /// One charge per pair, in `pairs()` order.
  CSparseMatrix assemble(std::span<const double> pair_charges) const;

  /// Charges of `charge` laid out per pair.
  std::vector<double> pair_values(const ChargeParams& charge) const;
  ChargeParams to_charge(std::span<const double> pair_charges) const;

  /// Given the current operator `a` (same pattern) and dLoss/dA* at each
  /// stored entry (gradient convention G = dL/dRe + i dL/dIm), adds
  /// dLoss/dQ_pair into `grad`.
  void accumulate_charge_gradient(const CSparseMatrix& a, std::span<const Complex> grad_entries,
                                  std::span<double> grad) const;

 private:
  Index n_ = 0;
  std::vector<Index> outer_;  // CSR row starts
  std::vector<Index> cols_;
  std::vector<double> magnitude_;
  std::vector<double> asymmetry_;
  std::vector<Index> entry_pair_;
  std::vector<std::array<Index, 2>> pairs_;
};

/// A = D~^-1/2 (P_s + I) D~^-1/2 (.) exp(i Theta) for the given charge.
CSparseMatrix propagation_operator(const SparseMatrix& p, const ChargeParams& charge);

}  // namespace maghyper
