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
#include <optional>
#include <type_traits>
#include <vector>

#include "maghyper/common.hpp"
#include "maghyper/magnetic.hpp"

namespace maghyper {

enum class ChargeMode { kScalar, kMatrix };

struct ModelConfig {
  std::vector<Index> hidden_dims{128, 128};  // one entry per convolution layer
  Index n_classes = 2;
  double learning_rate = 1e-3;
  double weight_decay = 5e-4;
  Index epochs = 200;
  std::uint64_t seed = 0;
  ChargeMode charge_mode = ChargeMode::kMatrix;
  // Fixed q in scalar mode; initial value of every Q entry in matrix mode.
  double charge = 0.25;
  // Adam step size for Q entries; 0 means learning_rate.
  double charge_learning_rate = 0.0;

  double effective_charge_learning_rate() const {
    return charge_learning_rate > 0.0 ? charge_learning_rate : learning_rate;
  }
  void validate() const;
};

struct LayerWeights {
  Matrix w_self;
  Matrix w_neigh;
  Vector bias;
};

/// Every trainable array of a model. Also used for gradients and for the two
/// Adam moment estimates, which share the layout.
struct ModelParameters {
  std::vector<LayerWeights> layers;
  Matrix head;
  std::vector<double> charges;  // one per pair; empty unless Q is learned

  ModelParameters zeros_like() const;
  bool all_finite() const;
  /// Calls fn(double* data, Index size, bool decayed) for every array.
  template <typename Fn>
  void visit(Fn&& fn);
};

struct ModelState {
  ModelParameters params;
  ModelParameters first_moment;
  ModelParameters second_moment;
  Index step = 0;  // Adam steps taken, one per epoch
};

/// Keeps z when Arg(z) lies in [-pi/2, pi/2): Re z > 0, or Re z = 0 with
/// Im z < 0. Zero maps to zero.
CMatrix complex_relu(const CMatrix& z);
bool complex_relu_keeps(Complex z);

template <typename Scalar>
struct LayerCache {
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Dense input;   // X^(l-1)
  Dense neigh;   // X^(l-1) W_neigh
  Dense pre;     // pre-activation
  Dense output;  // X^(l)
};

template <typename Scalar>
struct ForwardPass {
  Eigen::SparseMatrix<Scalar, Eigen::RowMajor> op;
  std::vector<LayerCache<Scalar>> layers;
  Matrix unwound;  // [Re X^(L) | Im X^(L)] for complex models, X^(L) otherwise
  Matrix logits;
};

struct LossValue {
  double value = 0.0;         // mean cross-entropy + weight decay term
  double cross_entropy = 0.0;
  Matrix dlogits;             // gradient of the cross-entropy part only
};

/// Mean softmax cross-entropy over the training rows plus
/// weight_decay / 2 * sum ||W||^2 over weight matrices (not biases, not Q).
LossValue loss(const Matrix& logits, const std::vector<int>& labels,
               const std::vector<bool>& train_mask, const ModelParameters& params,
               double weight_decay);

/// Fraction of masked rows whose argmax matches the label.
double accuracy(const Matrix& logits, const std::vector<int>& labels, const std::vector<bool>& mask);

/// Standard Adam (beta1 0.9, beta2 0.999, eps 1e-8) with bias correction.
/// Weight decay is expected to be folded into `grads` already. Q entries use
/// charge_learning_rate when it is positive.
void adam_step(ModelState& state, const ModelParameters& grads, double learning_rate,
               double charge_learning_rate = 0.0);

/// Two-layer (by default) spectral network
///   X^(l) = sigma(X^(l-1) W_self + A X^(l-1) W_neigh + B)
/// followed by a linear head. With Scalar = Complex, A is the magnetic
/// propagation operator (phase from a scalar q or a learnable Q) and sigma is
/// the complex ReLU; with Scalar = double, A is a fixed real propagator and
/// sigma is the ordinary ReLU. Weights are real in both cases.
template <typename Scalar>
class Network {
 public:
  using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Operator = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;
  static constexpr bool kComplex = !std::is_same_v<Scalar, double>;

  /// For the complex model `matrix` is the walk P and the operator is
  /// rebuilt from it; for the real model it is the fixed propagator itself.
  Network(const SparseMatrix& matrix, ModelConfig config);

  const ModelConfig& config() const { return config_; }
  Index num_vertices() const { return n_; }
  bool learns_charge() const { return kComplex && config_.charge_mode == ChargeMode::kMatrix; }
  const PropagationPattern& pattern() const { return *pattern_; }

  /// Glorot-uniform weights from config.seed, zero biases, Q entries at
  /// config.charge.
  ModelState initial_state(Index n_features) const;

  Operator build_operator(const ModelParameters& params) const;
  ForwardPass<Scalar> forward(const ModelParameters& params, const Matrix& features) const;
  /// Gradients of the cross-entropy given dLoss/dlogits. Weight decay is not
  /// included.
  ModelParameters backward(const ModelParameters& params, const ForwardPass<Scalar>& pass,
                           const Matrix& dlogits) const;

 private:
  Index n_ = 0;
  ModelConfig config_;
  std::optional<PropagationPattern> pattern_;
  Operator fixed_;  // unused when the charge is learned
};

using MagneticNetwork = Network<Complex>;
using RealNetwork = Network<double>;

struct SplitMask {
  std::vector<bool> train;
  std::vector<bool> test;
};

/// Shuffles the labeled vertices (label >= 0) with a stream derived from
/// (seed, stream) and assigns the first round(fraction * count) to train.
SplitMask random_split(const std::vector<int>& labels, double train_fraction, std::uint64_t seed,
                       std::uint64_t stream);

struct EpochRecord {
  Index epoch = 0;
  double loss = 0.0;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
};

struct TrainResult {
  ModelState state;
  std::vector<EpochRecord> history;
  double test_accuracy = 0.0;  // after the last epoch
};

/// Full-batch training for config.epochs epochs. Throws with the epoch index
/// if the loss becomes non-finite.
template <typename Scalar>
TrainResult train(const Network<Scalar>& network, const Matrix& features,
                  const std::vector<int>& labels, const SplitMask& split);

template <typename Scalar>
double evaluate(const Network<Scalar>& network, const ModelParameters& params,
                const Matrix& features, const std::vector<int>& labels,
                const std::vector<bool>& mask);

template <typename Fn>
void ModelParameters::visit(Fn&& fn) {
  for (auto& layer : layers) {
    fn(layer.w_self.data(), layer.w_self.size(), true);
    fn(layer.w_neigh.data(), layer.w_neigh.size(), true);
    fn(layer.bias.data(), layer.bias.size(), false);
  }
  fn(head.data(), head.size(), true);
  fn(charges.data(), static_cast<Index>(charges.size()), false);
}

}  // namespace maghyper
