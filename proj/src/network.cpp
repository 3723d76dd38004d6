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

#include "maghyper/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace maghyper {
namespace {

using RowMajorC = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// X W for a real W, without promoting W to complex.
Matrix times_real(const Matrix& x, const Matrix& w) { return x * w; }
CMatrix times_real(const CMatrix& x, const Matrix& w) {
  CMatrix out(x.rows(), w.cols());
  out.real() = x.real() * w;
  out.imag() = x.imag() * w;
  return out;
}

// Re(X^H G) for real weights: Re(X)^T Re(G) + Im(X)^T Im(G).
Matrix real_inner(const Matrix& x, const Matrix& g) { return x.transpose() * g; }
Matrix real_inner(const CMatrix& x, const CMatrix& g) {
  return x.real().transpose() * g.real() + x.imag().transpose() * g.imag();
}

Matrix real_part(const Matrix& g) { return g; }
Matrix real_part(const CMatrix& g) { return g.real(); }

bool keeps(double z) { return z > 0.0; }
bool keeps(Complex z) { return complex_relu_keeps(z); }

// Gradient passes only through the open right half-plane.
bool passes_gradient(double z) { return z > 0.0; }
bool passes_gradient(Complex z) { return z.real() > 0.0; }

template <typename Dense>
Dense activate(const Dense& z) {
  Dense out = z;
  for (Index k = 0; k < out.size(); ++k)
    if (!keeps(out.data()[k])) out.data()[k] = 0.0;
  return out;
}

void glorot(Matrix& w, std::mt19937_64& rng) {
  const double limit = std::sqrt(6.0 / static_cast<double>(w.rows() + w.cols()));
  std::uniform_real_distribution<double> unif(-limit, limit);
  // Column-major fill order is part of the reproducibility contract.
  for (Index k = 0; k < w.size(); ++k) w.data()[k] = unif(rng);
}

}  // namespace

void ModelConfig::validate() const {
  require(!hidden_dims.empty(), "at least one convolution layer is required");
  for (Index f : hidden_dims) require(f > 0, "hidden dimensions must be positive");
  require(n_classes >= 2, "at least two classes are required");
  require(learning_rate > 0.0 && std::isfinite(learning_rate), "learning rate must be positive");
  require(weight_decay >= 0.0 && std::isfinite(weight_decay), "weight decay must be nonnegative");
  require(epochs >= 0, "epoch count must be nonnegative");
  require(charge_learning_rate >= 0.0 && std::isfinite(charge_learning_rate),
          "charge learning rate must be nonnegative");
  require(std::isfinite(charge), "charge must be finite");
  require(charge_mode == ChargeMode::kMatrix || charge >= 0.0, "scalar charge must be nonnegative");
}

ModelParameters ModelParameters::zeros_like() const {
  ModelParameters out;
  for (const auto& layer : layers)
    out.layers.push_back({Matrix::Zero(layer.w_self.rows(), layer.w_self.cols()),
                          Matrix::Zero(layer.w_neigh.rows(), layer.w_neigh.cols()),
                          Vector::Zero(layer.bias.size())});
  out.head = Matrix::Zero(head.rows(), head.cols());
  out.charges.assign(charges.size(), 0.0);
  return out;
}

bool ModelParameters::all_finite() const {
  bool ok = head.allFinite();
  for (const auto& layer : layers)
    ok = ok && layer.w_self.allFinite() && layer.w_neigh.allFinite() && layer.bias.allFinite();
  for (double c : charges) ok = ok && std::isfinite(c);
  return ok;
}

bool complex_relu_keeps(Complex z) {
  return z.real() > 0.0 || (z.real() == 0.0 && z.imag() < 0.0);
}

CMatrix complex_relu(const CMatrix& z) { return activate(z); }

LossValue loss(const Matrix& logits, const std::vector<int>& labels,
               const std::vector<bool>& train_mask, const ModelParameters& params,
               double weight_decay) {
  const Index n = logits.rows();
  require(static_cast<Index>(labels.size()) == n && static_cast<Index>(train_mask.size()) == n,
          "labels and mask must have one entry per vertex");
  LossValue out;
  out.dlogits = Matrix::Zero(n, logits.cols());
  const auto count = std::count(train_mask.begin(), train_mask.end(), true);
  require(count > 0, "training mask is empty");
  const double inv = 1.0 / static_cast<double>(count);
  for (Index v = 0; v < n; ++v) {
    if (!train_mask[static_cast<std::size_t>(v)]) continue;
    const int y = labels[static_cast<std::size_t>(v)];
    require(y >= 0 && y < logits.cols(),
            "vertex " + std::to_string(v) + " is in the training mask without a valid label");
    const double shift = logits.row(v).maxCoeff();
    const Eigen::RowVectorXd e = (logits.row(v).array() - shift).exp().matrix();
    const double z = e.sum();
    out.cross_entropy += (std::log(z) + shift - logits(v, y)) * inv;
    out.dlogits.row(v) = e / z * inv;
    out.dlogits(v, y) -= inv;
  }
  double squares = params.head.squaredNorm();
  for (const auto& layer : params.layers)
    squares += layer.w_self.squaredNorm() + layer.w_neigh.squaredNorm();
  out.value = out.cross_entropy + 0.5 * weight_decay * squares;
  return out;
}

double accuracy(const Matrix& logits, const std::vector<int>& labels, const std::vector<bool>& mask) {
  require(static_cast<Index>(labels.size()) == logits.rows() &&
              static_cast<Index>(mask.size()) == logits.rows(),
          "labels and mask must have one entry per vertex");
  Index total = 0;
  Index correct = 0;
  for (Index v = 0; v < logits.rows(); ++v) {
    if (!mask[static_cast<std::size_t>(v)]) continue;
    ++total;
    Index best = 0;
    logits.row(v).maxCoeff(&best);
    if (best == labels[static_cast<std::size_t>(v)]) ++correct;
  }
  require(total > 0, "evaluation mask is empty");
  return static_cast<double>(correct) / static_cast<double>(total);
}

void adam_step(ModelState& state, const ModelParameters& grads, double learning_rate,
               double charge_learning_rate) {
  constexpr double kBeta1 = 0.9;
  constexpr double kBeta2 = 0.999;
  constexpr double kEps = 1e-8;
  ++state.step;
  const double c1 = 1.0 - std::pow(kBeta1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(kBeta2, static_cast<double>(state.step));

  std::vector<double*> p, m, v;
  std::vector<const double*> g;
  std::vector<Index> sizes;
  state.params.visit([&](double* d, Index n, bool) { p.push_back(d); sizes.push_back(n); });
  state.first_moment.visit([&](double* d, Index, bool) { m.push_back(d); });
  state.second_moment.visit([&](double* d, Index, bool) { v.push_back(d); });
  const_cast<ModelParameters&>(grads).visit([&](double* d, Index, bool) { g.push_back(d); });
  require(m.size() == p.size() && v.size() == p.size() && g.size() == p.size(),
          "gradient layout does not match the model");
  for (std::size_t a = 0; a < p.size(); ++a) {
    // Charges are always the last array.
    const double rate = a + 1 == p.size() && charge_learning_rate > 0.0 ? charge_learning_rate : learning_rate;
    for (Index k = 0; k < sizes[a]; ++k) {
      m[a][k] = kBeta1 * m[a][k] + (1.0 - kBeta1) * g[a][k];
      v[a][k] = kBeta2 * v[a][k] + (1.0 - kBeta2) * g[a][k] * g[a][k];
      p[a][k] -= rate * (m[a][k] / c1) / (std::sqrt(v[a][k] / c2) + kEps);
    }
  }
}

template <typename Scalar>
Network<Scalar>::Network(const SparseMatrix& matrix, ModelConfig config)
    : n_(matrix.rows()), config_(std::move(config)) {
  config_.validate();
  require(matrix.rows() == matrix.cols(), "operator must be square");
  if constexpr (kComplex) {
    pattern_.emplace(matrix);
    if (config_.charge_mode == ChargeMode::kScalar) fixed_ = pattern_->assemble(config_.charge);
  } else {
    fixed_ = matrix;
    fixed_.makeCompressed();
  }
}

template <typename Scalar>
ModelState Network<Scalar>::initial_state(Index n_features) const {
  require(n_features > 0, "feature dimension must be positive");
  std::mt19937_64 rng(config_.seed);
  ModelState state;
  Index fan_in = n_features;
  for (Index f : config_.hidden_dims) {
    LayerWeights layer{Matrix(fan_in, f), Matrix(fan_in, f), Vector::Zero(f)};
    glorot(layer.w_self, rng);
    glorot(layer.w_neigh, rng);
    state.params.layers.push_back(std::move(layer));
    fan_in = f;
  }
  state.params.head = Matrix((kComplex ? 2 : 1) * fan_in, config_.n_classes);
  glorot(state.params.head, rng);
  if (learns_charge()) state.params.charges.assign(static_cast<std::size_t>(pattern_->num_pairs()), config_.charge);
  state.first_moment = state.params.zeros_like();
  state.second_moment = state.params.zeros_like();
  return state;
}

template <typename Scalar>
typename Network<Scalar>::Operator Network<Scalar>::build_operator(const ModelParameters& params) const {
  if constexpr (kComplex) {
    if (learns_charge()) return pattern_->assemble(params.charges);
  }
  return fixed_;
}

template <typename Scalar>
ForwardPass<Scalar> Network<Scalar>::forward(const ModelParameters& params,
                                             const Matrix& features) const {
  require(features.rows() == n_, "feature matrix must have one row per vertex");
  require(params.layers.size() == config_.hidden_dims.size(), "parameters do not match the model");
  require(params.layers.front().w_self.rows() == features.cols(),
          "feature dimension does not match the first layer");
  ForwardPass<Scalar> pass;
  pass.op = build_operator(params);
  Dense x = features.template cast<Scalar>();
  for (std::size_t l = 0; l < params.layers.size(); ++l) {
    const auto& layer = params.layers[l];
    LayerCache<Scalar> cache;
    if (l == 0) {
      // Real input: skip the zero imaginary half.
      cache.neigh = (features * layer.w_neigh).template cast<Scalar>();
      cache.pre = (features * layer.w_self).template cast<Scalar>();
    } else {
      cache.neigh = times_real(x, layer.w_neigh);
      cache.pre = times_real(x, layer.w_self);
    }
    cache.pre += pass.op * cache.neigh;
    if constexpr (kComplex) {
      cache.pre.real().rowwise() += layer.bias.transpose();
    } else {
      cache.pre.rowwise() += layer.bias.transpose();
    }
    if (!cache.pre.allFinite())
      fail(ErrorCode::kNumerical, "non-finite pre-activation in layer " + std::to_string(l + 1));
    cache.output = activate(cache.pre);
    cache.input = std::move(x);
    x = cache.output;
    pass.layers.push_back(std::move(cache));
  }
  if constexpr (kComplex) {
    pass.unwound.resize(n_, 2 * x.cols());
    pass.unwound << x.real(), x.imag();
  } else {
    pass.unwound = x;
  }
  pass.logits = pass.unwound * params.head;
  if (!pass.logits.allFinite()) fail(ErrorCode::kNumerical, "non-finite logits");
  return pass;
}

template <typename Scalar>
ModelParameters Network<Scalar>::backward(const ModelParameters& params,
                                          const ForwardPass<Scalar>& pass,
                                          const Matrix& dlogits) const {
  ModelParameters grads = params.zeros_like();
  grads.head = pass.unwound.transpose() * dlogits;
  const Matrix d_unwound = dlogits * params.head.transpose();

  const Index f_last = pass.layers.back().output.cols();
  Dense g;
  if constexpr (kComplex) {
    g.resize(n_, f_last);
    g.real() = d_unwound.leftCols(f_last);
    g.imag() = d_unwound.rightCols(f_last);
  } else {
    g = d_unwound;
  }

  for (std::size_t l = params.layers.size(); l-- > 0;) {
    const auto& layer = params.layers[l];
    const auto& cache = pass.layers[l];
    auto& out = grads.layers[l];
    for (Index k = 0; k < g.size(); ++k)
      if (!passes_gradient(cache.pre.data()[k])) g.data()[k] = 0.0;

    out.bias = real_part(g).colwise().sum().transpose();
    const Dense g_neigh = pass.op.adjoint() * g;
    out.w_self = real_inner(cache.input, g);
    out.w_neigh = real_inner(cache.input, g_neigh);

    if constexpr (kComplex) {
      if (learns_charge()) {
        const RowMajorC gz = g;
        const RowMajorC h = cache.neigh;
        std::vector<Complex> grad_entries(static_cast<std::size_t>(pass.op.nonZeros()));
        std::size_t k = 0;
        for (Index u = 0; u < pass.op.outerSize(); ++u)
          for (typename Operator::InnerIterator it(pass.op, u); it; ++it, ++k)
            grad_entries[k] = (gz.row(u).array() * h.row(it.col()).array().conjugate()).sum();
        pattern_->accumulate_charge_gradient(pass.op, grad_entries, grads.charges);
      }
    }
    if (l > 0) g = times_real(g, layer.w_self.transpose()) + times_real(g_neigh, layer.w_neigh.transpose());
  }
  return grads;
}

SplitMask random_split(const std::vector<int>& labels, double train_fraction, std::uint64_t seed,
                       std::uint64_t stream) {
  require(train_fraction > 0.0 && train_fraction < 1.0, "train fraction must lie in (0, 1)");
  std::vector<Index> labeled;
  for (std::size_t v = 0; v < labels.size(); ++v)
    if (labels[v] >= 0) labeled.push_back(static_cast<Index>(v));
  require(labeled.size() >= 2, "at least two labeled vertices are needed for a split");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::mt19937_64 rng(seq);
  std::shuffle(labeled.begin(), labeled.end(), rng);
  auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(labeled.size())));
  n_train = std::clamp<std::size_t>(n_train, 1, labeled.size() - 1);
  SplitMask split{std::vector<bool>(labels.size(), false), std::vector<bool>(labels.size(), false)};
  for (std::size_t i = 0; i < labeled.size(); ++i)
    (i < n_train ? split.train : split.test)[static_cast<std::size_t>(labeled[i])] = true;
  return split;
}

template <typename Scalar>
TrainResult train(const Network<Scalar>& network, const Matrix& features,
                  const std::vector<int>& labels, const SplitMask& split) {
  const auto& config = network.config();
  for (int y : labels)
    require(y < config.n_classes, "label exceeds the configured class count");
  TrainResult result;
  result.state = network.initial_state(features.cols());
  for (Index epoch = 0; epoch < config.epochs; ++epoch) {
    const auto pass = network.forward(result.state.params, features);
    const LossValue value =
        loss(pass.logits, labels, split.train, result.state.params, config.weight_decay);
    if (!std::isfinite(value.value))
      fail(ErrorCode::kNumerical, "training diverged at epoch " + std::to_string(epoch));
    result.history.push_back({epoch, value.value, accuracy(pass.logits, labels, split.train),
                              accuracy(pass.logits, labels, split.test)});
    ModelParameters grads = network.backward(result.state.params, pass, value.dlogits);
    // Weight decay enters through the loss gradient (coupled L2).
    std::vector<double*> w;
    result.state.params.visit([&](double* d, Index, bool decayed) { w.push_back(decayed ? d : nullptr); });
    std::size_t a = 0;
    grads.visit([&](double* d, Index n, bool) {
      if (w[a] != nullptr)
        for (Index k = 0; k < n; ++k) d[k] += config.weight_decay * w[a][k];
      ++a;
    });
    adam_step(result.state, grads, config.learning_rate, config.effective_charge_learning_rate());
    if (!result.state.params.all_finite())
      fail(ErrorCode::kNumerical, "parameters became non-finite at epoch " + std::to_string(epoch));
  }
  result.test_accuracy = evaluate(network, result.state.params, features, labels, split.test);
  return result;
}

template <typename Scalar>
double evaluate(const Network<Scalar>& network, const ModelParameters& params,
                const Matrix& features, const std::vector<int>& labels,
                const std::vector<bool>& mask) {
  return accuracy(network.forward(params, features).logits, labels, mask);
}

template class Network<double>;
template class Network<Complex>;
template TrainResult train(const Network<double>&, const Matrix&, const std::vector<int>&, const SplitMask&);
template TrainResult train(const Network<Complex>&, const Matrix&, const std::vector<int>&, const SplitMask&);
template double evaluate(const Network<double>&, const ModelParameters&, const Matrix&,
                         const std::vector<int>&, const std::vector<bool>&);
template double evaluate(const Network<Complex>&, const ModelParameters&, const Matrix&,
                         const std::vector<int>&, const std::vector<bool>&);

}  // namespace maghyper
