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

#include "maghyper/magnetic.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <unordered_map>

namespace maghyper {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(2 pi i t) with octant reduction so quarter turns are exact and
// unit_phasor(-t) == conj(unit_phasor(t)) bit for bit.
Complex unit_phasor(double turns) {
  const double r = turns - std::nearbyint(turns);
  const double quarter = std::nearbyint(4.0 * r);
  const double f = r - 0.25 * quarter;
  const double s = std::sin(kTwoPi * f);
  const double c = std::cos(kTwoPi * f);
  switch (static_cast<int>(quarter)) {
    case 0: return {c, s};
    case 1: return {-s, c};
    case -1: return {s, -c};
    default: return {-c, -s};  // +-2, half a turn either way
  }
}

void require_nonnegative(const SparseMatrix& p) {
  require(p.rows() == p.cols(), "transition matrix must be square");
  for (Index k = 0; k < p.nonZeros(); ++k)
    require(std::isfinite(p.valuePtr()[k]) && p.valuePtr()[k] >= 0.0,
            "transition matrix entries must be finite and nonnegative");
}

// Per-entry walk over the pattern of P_s, calling fn(u, v, ps_uv, p_uv - p_vu).
template <typename Fn>
void for_each_symmetric_entry(const SparseMatrix& p, const SparseMatrix& ps, Fn&& fn) {
  const SparseMatrix asym = p - SparseMatrix(p.transpose());
  for (Index u = 0; u < ps.outerSize(); ++u) {
    SparseMatrix::InnerIterator a(asym, u);
    for (SparseMatrix::InnerIterator it(ps, u); it; ++it) {
      while (a && a.col() < it.col()) ++a;
      const double d = (a && a.col() == it.col()) ? a.value() : 0.0;
      fn(u, it.col(), it.value(), d);
    }
  }
}

std::uint64_t pair_key(Index u, Index v) {
  return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint64_t>(v);
}

}  // namespace

ChargeParams ChargeParams::scalar(double q) {
  require(std::isfinite(q) && q >= 0.0, "charge q must be finite and nonnegative");
  ChargeParams c;
  c.q_ = q;
  return c;
}

ChargeParams ChargeParams::matrix(SparseMatrix q) {
  require(q.rows() == q.cols(), "charge matrix must be square");
  q.makeCompressed();
  const SparseMatrix qt = q.transpose();
  for (Index u = 0; u < q.outerSize(); ++u) {
    for (SparseMatrix::InnerIterator it(q, u); it; ++it) {
      require(std::isfinite(it.value()), "charge matrix entries must be finite");
      const double mirror = qt.coeff(u, it.col());
      require(std::abs(mirror - it.value()) <= 1e-12 * std::max(1.0, std::abs(it.value())),
              "charge matrix is not symmetric at (" + std::to_string(u) + ", " +
                  std::to_string(it.col()) + ")");
    }
  }
  ChargeParams c;
  c.matrix_ = std::move(q);
  return c;
}

ChargeParams ChargeParams::constant_over_support(const SparseMatrix& p, double value) {
  const SparseMatrix ps = 0.5 * (p + SparseMatrix(p.transpose()));
  std::vector<Triplet> entries;
  for (Index u = 0; u < ps.outerSize(); ++u)
    for (SparseMatrix::InnerIterator it(ps, u); it; ++it)
      if (it.col() != u && it.value() != 0.0) entries.emplace_back(u, it.col(), value);
  SparseMatrix q(p.rows(), p.cols());
  q.setFromTriplets(entries.begin(), entries.end());
  return matrix(std::move(q));
}

double ChargeParams::at(Index u, Index v) const {
  if (is_scalar()) return q_;
  // Read the upper triangle so Q(u, v) and Q(v, u) are the same double.
  return matrix_->coeff(std::min(u, v), std::max(u, v));
}

Symmetrized symmetrize(const SparseMatrix& p) {
  require_nonnegative(p);
  Symmetrized out;
  out.ps = 0.5 * (p + SparseMatrix(p.transpose()));
  out.ps.makeCompressed();
  out.degrees = out.ps * Vector::Ones(p.cols());
  for (Index v = 0; v < out.degrees.size(); ++v)
    if (!(out.degrees[v] > 0.0))
      fail(ErrorCode::kInvalidArgument,
           "vertex " + std::to_string(v) + " has no neighbours after symmetrization");
  return out;
}

SparseMatrix phase_matrix(const SparseMatrix& p, const ChargeParams& charge) {
  const Symmetrized sym = symmetrize(p);
  std::vector<Triplet> entries;
  for_each_symmetric_entry(p, sym.ps, [&](Index u, Index v, double, double d) {
    entries.emplace_back(u, v, kTwoPi * (charge.at(u, v) * d));
  });
  SparseMatrix theta(p.rows(), p.cols());
  theta.setFromTriplets(entries.begin(), entries.end());
  return theta;
}

CSparseMatrix hermitian_adjacency(const SparseMatrix& p, const ChargeParams& charge) {
  const Symmetrized sym = symmetrize(p);
  std::vector<CTriplet> entries;
  for_each_symmetric_entry(p, sym.ps, [&](Index u, Index v, double w, double d) {
    entries.emplace_back(u, v, w * unit_phasor(charge.at(u, v) * d));
  });
  CSparseMatrix h(p.rows(), p.cols());
  h.setFromTriplets(entries.begin(), entries.end());
  return h;
}

MagneticLaplacian magnetic_laplacian(const SparseMatrix& p, const ChargeParams& charge,
                                     LaplacianForm form, bool renormalize) {
  MagneticLaplacian out;
  Symmetrized sym = symmetrize(p);
  const Index n = p.rows();
  const Vector inv_sqrt = sym.degrees.cwiseSqrt().cwiseInverse();

  std::vector<CTriplet> entries;
  for (Index v = 0; v < n; ++v)
    entries.emplace_back(v, v, form == LaplacianForm::kNormalized ? 1.0 : sym.degrees[v]);
  for_each_symmetric_entry(p, sym.ps, [&](Index u, Index v, double w, double d) {
    const double scale = form == LaplacianForm::kNormalized ? inv_sqrt[u] * inv_sqrt[v] : 1.0;
    entries.emplace_back(u, v, -(scale * w) * unit_phasor(charge.at(u, v) * d));
  });
  out.laplacian.resize(n, n);
  out.laplacian.setFromTriplets(entries.begin(), entries.end());
  out.laplacian.makeCompressed();
  out.phase = phase_matrix(p, charge);
  out.symmetrized = std::move(sym.ps);
  out.degrees = std::move(sym.degrees);
  out.form = form;

  if (renormalize) {
    const ExtremeEigenpair top = largest_eigenpair(out.laplacian, 1e-9);
    require(top.value > 0.0, "largest Laplacian eigenvalue is zero; cannot renormalize");
    out.lambda_max = top.value;
    CSparseMatrix identity(n, n);
    identity.setIdentity();
    CSparseMatrix scaled = Complex(2.0 / top.value) * out.laplacian - identity;
    scaled.makeCompressed();
    out.renormalized = std::move(scaled);
  }
  return out;
}

ExtremeEigenpair largest_eigenpair(const CSparseMatrix& a, double tol, Index max_restarts) {
  const Index n = a.rows();
  require(n > 0 && a.cols() == n, "eigenproblem needs a nonempty square matrix");
  const Index m = std::min<Index>(n, 80);

  std::mt19937_64 rng(0x6c616e637a6f73ULL);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  CVector start(n);
  for (Index i = 0; i < n; ++i) start[i] = Complex(unif(rng), unif(rng));
  start.normalize();

  ExtremeEigenpair best;
  CMatrix basis(n, m);
  CMatrix image(n, m);
  for (Index restart = 0; restart <= max_restarts; ++restart) {
    CVector v = start;
    Index k = 0;
    for (Index j = 0; j < m; ++j) {
      basis.col(j) = v;
      image.col(j) = a * v;
      CVector w = image.col(j);
      k = j + 1;
      // Two passes of classical Gram-Schmidt keep the basis orthonormal.
      for (int pass = 0; pass < 2; ++pass)
        w -= basis.leftCols(k) * (basis.leftCols(k).adjoint() * w);
      const double b = w.norm();
      if (j + 1 == m || b <= 1e-13 * std::max(1.0, image.col(j).norm())) break;
      v = w / b;
    }
    // Rayleigh-Ritz on the full projection rather than the three-term
    // recurrence, which stays exact once the Krylov space is nearly exhausted.
    CMatrix h = basis.leftCols(k).adjoint() * image.leftCols(k);
    h = 0.5 * (h + h.adjoint()).eval();
    const Eigen::SelfAdjointEigenSolver<CMatrix> small(h);
    const double theta = small.eigenvalues()[k - 1];
    CVector y = basis.leftCols(k) * small.eigenvectors().col(k - 1);
    y.normalize();
    const double residual = (a * y - theta * y).norm();
    best = {theta, y, residual, restart + 1};
    if (residual <= tol * std::max(1.0, std::abs(theta))) return best;
    start = y;
  }
  fail(ErrorCode::kNumerical, "Lanczos did not converge (residual " + std::to_string(best.residual) +
                                  ", estimate " + std::to_string(best.value) + ")");
}

SpectralDecomposition spectral_decomposition(const CMatrix& hermitian) {
  require(hermitian.rows() == hermitian.cols(), "matrix must be square");
  const Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian);
  if (solver.info() != Eigen::Success)
    fail(ErrorCode::kNumerical, "Hermitian eigensolver failed to converge");
  return {solver.eigenvectors(), solver.eigenvalues()};
}

SpectralDecomposition spectral_decomposition(const MagneticLaplacian& laplacian) {
  return spectral_decomposition(laplacian.dense());
}

CVector fourier_transform(const CVector& x, const CMatrix& basis) {
  require(x.size() == basis.rows(), "signal length does not match the basis");
  return basis.adjoint() * x;
}

CVector inverse_fourier(const CVector& x_hat, const CMatrix& basis) {
  require(x_hat.size() == basis.cols(), "spectrum length does not match the basis");
  return basis * x_hat;
}

CVector convolve(const CVector& y, const CVector& x, const CMatrix& basis) {
  const CVector y_hat = fourier_transform(y, basis);
  const CVector x_hat = fourier_transform(x, basis);
  return inverse_fourier(y_hat.cwiseProduct(x_hat), basis);
}

PropagationPattern::PropagationPattern(const SparseMatrix& p) : n_(p.rows()) {
  const Symmetrized sym = symmetrize(p);
  SparseMatrix identity(n_, n_);
  identity.setIdentity();
  SparseMatrix shifted = sym.ps + identity;
  shifted.makeCompressed();
  const Vector inv_sqrt = (sym.degrees.array() + 1.0).sqrt().inverse().matrix();

  std::unordered_map<std::uint64_t, Index> pair_ids;
  const SparseMatrix asym = p - SparseMatrix(p.transpose());
  outer_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (Index u = 0; u < n_; ++u) {
    SparseMatrix::InnerIterator a(asym, u);
    for (SparseMatrix::InnerIterator it(shifted, u); it; ++it) {
      const Index v = it.col();
      while (a && a.col() < v) ++a;
      cols_.push_back(v);
      magnitude_.push_back(inv_sqrt[u] * it.value() * inv_sqrt[v]);
      asymmetry_.push_back((a && a.col() == v) ? a.value() : 0.0);
      if (u == v) {
        entry_pair_.push_back(-1);
        continue;
      }
      const auto key = pair_key(std::min(u, v), std::max(u, v));
      auto [pos, inserted] = pair_ids.try_emplace(key, static_cast<Index>(pairs_.size()));
      if (inserted) pairs_.push_back({std::min(u, v), std::max(u, v)});
      entry_pair_.push_back(pos->second);
    }
    outer_[static_cast<std::size_t>(u) + 1] = static_cast<Index>(cols_.size());
  }
}

SparseMatrix PropagationPattern::real_operator() const {
  SparseMatrix out(n_, n_);
  out.reserve(nonzeros());
  std::vector<Triplet> entries;
  for (Index u = 0; u < n_; ++u)
    for (Index k = outer_[static_cast<std::size_t>(u)]; k < outer_[static_cast<std::size_t>(u) + 1]; ++k)
      entries.emplace_back(u, cols_[static_cast<std::size_t>(k)], magnitude_[static_cast<std::size_t>(k)]);
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

CSparseMatrix PropagationPattern::assemble(std::span<const double> pair_charges) const {
  require(static_cast<Index>(pair_charges.size()) == num_pairs(), "one charge per pair is required");
  std::vector<CTriplet> entries;
  entries.reserve(cols_.size());
  for (Index u = 0; u < n_; ++u) {
    for (Index k = outer_[static_cast<std::size_t>(u)]; k < outer_[static_cast<std::size_t>(u) + 1]; ++k) {
      const auto ks = static_cast<std::size_t>(k);
      const Index pair = entry_pair_[ks];
      const double charge = pair < 0 ? 0.0 : pair_charges[static_cast<std::size_t>(pair)];
      entries.emplace_back(u, cols_[ks], magnitude_[ks] * unit_phasor(charge * asymmetry_[ks]));
    }
  }
  CSparseMatrix out(n_, n_);
  out.setFromTriplets(entries.begin(), entries.end());
  out.makeCompressed();
  return out;
}

CSparseMatrix PropagationPattern::assemble(double q) const {
  return assemble(std::vector<double>(pairs_.size(), q));
}

CSparseMatrix PropagationPattern::assemble(const ChargeParams& charge) const {
  return assemble(pair_values(charge));
}

std::vector<double> PropagationPattern::pair_values(const ChargeParams& charge) const {
  std::vector<double> out(pairs_.size());
  for (std::size_t i = 0; i < pairs_.size(); ++i) out[i] = charge.at(pairs_[i][0], pairs_[i][1]);
  return out;
}

ChargeParams PropagationPattern::to_charge(std::span<const double> pair_charges) const {
  require(static_cast<Index>(pair_charges.size()) == num_pairs(), "one charge per pair is required");
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    entries.emplace_back(pairs_[i][0], pairs_[i][1], pair_charges[i]);
    entries.emplace_back(pairs_[i][1], pairs_[i][0], pair_charges[i]);
  }
  SparseMatrix q(n_, n_);
  q.setFromTriplets(entries.begin(), entries.end());
  return ChargeParams::matrix(std::move(q));
}

void PropagationPattern::accumulate_charge_gradient(const CSparseMatrix& a,
                                                    std::span<const Complex> grad_entries,
                                                    std::span<double> grad) const {
  require(a.nonZeros() == nonzeros() && static_cast<Index>(grad_entries.size()) == nonzeros(),
          "operator does not match the propagation pattern");
  require(static_cast<Index>(grad.size()) == num_pairs(), "charge gradient has the wrong length");
  const Complex* values = a.valuePtr();
  for (std::size_t k = 0; k < cols_.size(); ++k) {
    const Index pair = entry_pair_[k];
    if (pair < 0 || asymmetry_[k] == 0.0) continue;
    // dA/dQ = i 2 pi (P_uv - P_vu) A; contribution Re(conj(G) dA/dQ).
    const Complex d = Complex(0.0, kTwoPi * asymmetry_[k]) * values[k];
    grad[static_cast<std::size_t>(pair)] += (std::conj(grad_entries[k]) * d).real();
  }
}

CSparseMatrix propagation_operator(const SparseMatrix& p, const ChargeParams& charge) {
  return PropagationPattern(p).assemble(charge);
}

}  // namespace maghyper
