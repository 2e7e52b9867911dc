#ifndef SNTG_MLP_HPP
#define SNTG_MLP_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sntg/matrix.hpp"
#include "sntg/rng.hpp"

namespace sntg {

// Student network f = g∘h: affine + leaky-ReLU hidden layers, affine +
// softmax head. h(x) is the input to the final affine map, i.e. the last
// hidden activation after any training-time noise and dropout.
struct MlpModel {
  std::vector<Matrix> weights;               // weights[l] is in x out
  std::vector<std::vector<double>> biases;   // biases[l] has length out
  double leaky_slope = 0.1;

  std::size_t num_layers() const { return weights.size(); }
  std::size_t input_dim() const { return weights.front().rows(); }
  std::size_t feature_dim() const { return weights.back().rows(); }
  std::size_t num_classes() const { return weights.back().cols(); }

  void validate() const;  // shape chaining, finite parameters
};

// He-style scaled-uniform init, biases zero.
MlpModel make_mlp(std::size_t input_dim, const std::vector<std::size_t>& hidden_sizes,
                  std::size_t num_classes, double leaky_slope, Rng& rng);

struct Perturbation {
  double input_noise_sd = 0.0;
  double layer_noise_sd = 0.0;
  double dropout_rate = 0.0;  // in [0, 1)
  bool enabled = false;
};

// Everything the backward pass needs. `activations[l]` is the input fed to
// affine layer l (so activations[0] is the noisy input and activations back()
// is h). `dropout_scale` holds the realized inverted-dropout multipliers,
// one matrix per hidden layer, empty when dropout was off.
struct ForwardTrace {
  std::vector<Matrix> activations;
  std::vector<Matrix> pre_activations;  // per hidden layer
  std::vector<Matrix> dropout_scale;
  Matrix logits;
  Matrix probs;

  const Matrix& h() const { return activations.back(); }
  const Matrix& f() const { return probs; }
};

ForwardTrace forward(const MlpModel& model, const Matrix& x, const Perturbation& pert, Rng& rng);
// Noise-free deterministic pass.
ForwardTrace forward(const MlpModel& model, const Matrix& x);

struct Gradients {
  std::vector<Matrix> weights;
  std::vector<std::vector<double>> biases;
};

Gradients zero_gradients(const MlpModel& model);

// Exact gradients given dL/dlogits and an optional extra dL/dh injected at
// the last hidden activation (the SNTG path). Noise and dropout realizations
// recorded in the trace are treated as constants.
Gradients backward(const MlpModel& model, const ForwardTrace& trace, const Matrix& dlogits,
                   const Matrix& dh_extra = Matrix());

// Chain rule through a softmax row: dL/dz_ik = F_ik (dF_ik − Σ_j dF_ij F_ij).
Matrix softmax_backward(const Matrix& probs, const Matrix& dprobs);

struct SupervisedLossResult {
  double value = 0.0;
  std::size_t saturated = 0;  // predictions clamped at the log floor
};

// Mean negative log-likelihood over labeled rows, normalized by the full
// batch size rather than the labeled count.
SupervisedLossResult supervised_loss(const Matrix& probs, const std::vector<int>& labels,
                                     const std::vector<std::uint8_t>& mask);

// Mean over rows of −Σ_k F_ik ln F_ik, with 0·ln 0 = 0.
double entropy_loss(const Matrix& probs);

}  // namespace sntg

#endif
