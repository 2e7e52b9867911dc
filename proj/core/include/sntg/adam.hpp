#ifndef SNTG_ADAM_HPP
#define SNTG_ADAM_HPP

#include <cstddef>
#include <vector>

#include "sntg/matrix.hpp"
#include "sntg/mlp.hpp"

namespace sntg {

struct AdamState {
  std::vector<Matrix> m_weights, v_weights;
  std::vector<std::vector<double>> m_biases, v_biases;
  std::size_t step = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

AdamState make_adam_state(const MlpModel& model);

// One bias-corrected Adam update. A non-finite gradient aborts the step
// before touching any parameter.
void adam_step(MlpModel& model, const Gradients& grads, AdamState& state, double lr);

}  // namespace sntg

#endif
