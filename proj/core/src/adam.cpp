#include "sntg/adam.hpp"

#include <cmath>
#include <stdexcept>

#include "sntg/errors.hpp"

namespace sntg {

AdamState make_adam_state(const MlpModel& model) {
  AdamState s;
  for (std::size_t l = 0; l < model.num_layers(); ++l) {
    s.m_weights.emplace_back(model.weights[l].rows(), model.weights[l].cols());
    s.v_weights.emplace_back(model.weights[l].rows(), model.weights[l].cols());
    s.m_biases.emplace_back(model.biases[l].size(), 0.0);
    s.v_biases.emplace_back(model.biases[l].size(), 0.0);
  }
  return s;
}

static void update_array(double* param, double* m, double* v, const double* g, std::size_t n,
                         const AdamState& s, double lr, double bc1, double bc2) {
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = s.beta1 * m[i] + (1.0 - s.beta1) * g[i];
    v[i] = s.beta2 * v[i] + (1.0 - s.beta2) * g[i] * g[i];
    const double mhat = m[i] / bc1;
    const double vhat = v[i] / bc2;
    param[i] -= lr * mhat / (std::sqrt(vhat) + s.eps);
  }
}

void adam_step(MlpModel& model, const Gradients& grads, AdamState& state, double lr) {
  if (grads.weights.size() != model.num_layers() || state.m_weights.size() != model.num_layers())
    throw std::invalid_argument("adam_step: layer count mismatch");
  for (std::size_t l = 0; l < model.num_layers(); ++l) {
    if (!grads.weights[l].same_shape(model.weights[l]) ||
        grads.biases[l].size() != model.biases[l].size())
      throw std::invalid_argument("adam_step: gradient shape mismatch");
    if (!all_finite(grads.weights[l])) throw NumericError("adam_step: non-finite weight gradient");
    for (double g : grads.biases[l])
      if (!std::isfinite(g)) throw NumericError("adam_step: non-finite bias gradient");
  }

  ++state.step;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  for (std::size_t l = 0; l < model.num_layers(); ++l) {
    update_array(model.weights[l].data().data(), state.m_weights[l].data().data(),
                 state.v_weights[l].data().data(), grads.weights[l].data().data(),
                 model.weights[l].size(), state, lr, bc1, bc2);
    update_array(model.biases[l].data(), state.m_biases[l].data(), state.v_biases[l].data(),
                 grads.biases[l].data(), model.biases[l].size(), state, lr, bc1, bc2);
  }
}

}  // namespace sntg
