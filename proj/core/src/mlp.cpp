#include "sntg/mlp.hpp"

#include <cmath>
#include <stdexcept>

#include "sntg/errors.hpp"
#include "sntg/numerics.hpp"

namespace sntg {

void MlpModel::validate() const {
  if (weights.empty()) throw std::invalid_argument("mlp: no layers");
  if (biases.size() != weights.size()) throw std::invalid_argument("mlp: bias/weight layer count mismatch");
  if (leaky_slope < 0.0 || leaky_slope >= 1.0)
    throw std::invalid_argument("mlp: leaky_slope outside [0, 1)");
  for (std::size_t l = 0; l < weights.size(); ++l) {
    if (biases[l].size() != weights[l].cols())
      throw std::invalid_argument("mlp: bias length does not match layer width");
    if (l + 1 < weights.size() && weights[l].cols() != weights[l + 1].rows())
      throw std::invalid_argument("mlp: consecutive layer shapes do not chain");
    require_finite(weights[l], "mlp weights");
    for (double b : biases[l])
      if (!std::isfinite(b)) throw NumericError("non-finite value in mlp biases");
  }
}

MlpModel make_mlp(std::size_t input_dim, const std::vector<std::size_t>& hidden_sizes,
                  std::size_t num_classes, double leaky_slope, Rng& rng) {
  MlpModel m;
  m.leaky_slope = leaky_slope;
  std::vector<std::size_t> sizes;
  sizes.push_back(input_dim);
  sizes.insert(sizes.end(), hidden_sizes.begin(), hidden_sizes.end());
  sizes.push_back(num_classes);

  const double gain = std::sqrt(2.0 / (1.0 + leaky_slope * leaky_slope));
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const std::size_t fan_in = sizes[l];
    const std::size_t fan_out = sizes[l + 1];
    const double bound = gain * std::sqrt(3.0 / static_cast<double>(fan_in));
    Matrix w(fan_in, fan_out);
    for (double& v : w.data()) v = (2.0 * rng.uniform() - 1.0) * bound;
    m.weights.push_back(std::move(w));
    m.biases.emplace_back(fan_out, 0.0);
  }
  m.validate();
  return m;
}

static Matrix affine(const Matrix& a, const Matrix& w, const std::vector<double>& b) {
  Matrix z = matmul(a, w);
  for (std::size_t i = 0; i < z.rows(); ++i) {
    double* zi = z.row(i);
    for (std::size_t j = 0; j < z.cols(); ++j) zi[j] += b[j];
  }
  return z;
}

ForwardTrace forward(const MlpModel& model, const Matrix& x, const Perturbation& pert, Rng& rng) {
  if (x.cols() != model.input_dim()) throw std::invalid_argument("forward: input width mismatch");
  if (pert.dropout_rate < 0.0 || pert.dropout_rate >= 1.0)
    throw std::invalid_argument("forward: dropout_rate outside [0, 1)");

  const std::size_t num_layers = model.num_layers();
  ForwardTrace trace;
  trace.activations.reserve(num_layers);

  Matrix a = x;
  if (pert.enabled && pert.input_noise_sd > 0.0)
    for (double& v : a.data()) v += rng.normal(pert.input_noise_sd);
  trace.activations.push_back(std::move(a));

  for (std::size_t l = 0; l + 1 < num_layers; ++l) {
    Matrix z = affine(trace.activations.back(), model.weights[l], model.biases[l]);
    Matrix h = leaky_relu(z, model.leaky_slope);
    trace.pre_activations.push_back(std::move(z));
    if (pert.enabled && pert.layer_noise_sd > 0.0)
      for (double& v : h.data()) v += rng.normal(pert.layer_noise_sd);
    if (pert.enabled && pert.dropout_rate > 0.0) {
      const double keep_scale = 1.0 / (1.0 - pert.dropout_rate);
      Matrix scale(h.rows(), h.cols());
      for (double& s : scale.data()) s = rng.uniform() >= pert.dropout_rate ? keep_scale : 0.0;
      for (std::size_t i = 0; i < h.size(); ++i) h.data()[i] *= scale.data()[i];
      trace.dropout_scale.push_back(std::move(scale));
    }
    trace.activations.push_back(std::move(h));
  }

  trace.logits = affine(trace.activations.back(), model.weights.back(), model.biases.back());
  trace.probs = softmax_rows(trace.logits);
  return trace;
}

ForwardTrace forward(const MlpModel& model, const Matrix& x) {
  Rng unused(0);
  return forward(model, x, Perturbation{}, unused);
}

Gradients zero_gradients(const MlpModel& model) {
  Gradients g;
  for (std::size_t l = 0; l < model.num_layers(); ++l) {
    g.weights.emplace_back(model.weights[l].rows(), model.weights[l].cols());
    g.biases.emplace_back(model.biases[l].size(), 0.0);
  }
  return g;
}

Gradients backward(const MlpModel& model, const ForwardTrace& trace, const Matrix& dlogits,
                   const Matrix& dh_extra) {
  const std::size_t num_layers = model.num_layers();
  if (trace.activations.size() != num_layers || trace.pre_activations.size() + 1 != num_layers)
    throw std::invalid_argument("backward: trace does not match model depth");
  if (!dlogits.same_shape(trace.logits))
    throw std::invalid_argument("backward: dlogits shape mismatch");

  Gradients g = zero_gradients(model);

  g.weights.back() = matmul_tn(trace.activations.back(), dlogits);
  g.biases.back() = column_sums(dlogits);
  Matrix da = matmul_nt(dlogits, model.weights.back());
  if (!dh_extra.empty()) {
    if (!dh_extra.same_shape(da)) throw std::invalid_argument("backward: dh_extra shape mismatch");
    da += dh_extra;
  }

  for (std::size_t l = num_layers - 1; l-- > 0;) {
    if (!trace.dropout_scale.empty())
      for (std::size_t i = 0; i < da.size(); ++i) da.data()[i] *= trace.dropout_scale[l].data()[i];
    const Matrix& z = trace.pre_activations[l];
    Matrix dz = da;
    for (std::size_t i = 0; i < dz.size(); ++i)
      if (z.data()[i] < 0.0) dz.data()[i] *= model.leaky_slope;
    g.weights[l] = matmul_tn(trace.activations[l], dz);
    g.biases[l] = column_sums(dz);
    if (l > 0) da = matmul_nt(dz, model.weights[l]);
  }
  return g;
}

Matrix softmax_backward(const Matrix& probs, const Matrix& dprobs) {
  if (!probs.same_shape(dprobs)) throw std::invalid_argument("softmax_backward: shape mismatch");
  Matrix dz(probs.rows(), probs.cols());
  for (std::size_t i = 0; i < probs.rows(); ++i) {
    const double* f = probs.row(i);
    const double* df = dprobs.row(i);
    double dot = 0.0;
    for (std::size_t k = 0; k < probs.cols(); ++k) dot += df[k] * f[k];
    double* out = dz.row(i);
    for (std::size_t k = 0; k < probs.cols(); ++k) out[k] = f[k] * (df[k] - dot);
  }
  return dz;
}

SupervisedLossResult supervised_loss(const Matrix& probs, const std::vector<int>& labels,
                                     const std::vector<std::uint8_t>& mask) {
  if (labels.size() != probs.rows() || mask.size() != probs.rows())
    throw std::invalid_argument("supervised_loss: label/mask size mismatch");
  SupervisedLossResult out;
  if (probs.rows() == 0) return out;
  constexpr double kFloor = 1e-12;
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.rows(); ++i) {
    if (!mask[i]) continue;
    if (labels[i] < 0 || labels[i] >= static_cast<int>(probs.cols()))
      throw std::invalid_argument("supervised_loss: labeled row has out-of-range label");
    double p = probs(i, static_cast<std::size_t>(labels[i]));
    if (p < kFloor) {
      p = kFloor;
      ++out.saturated;
    }
    sum -= std::log(p);
  }
  out.value = sum / static_cast<double>(probs.rows());
  return out;
}

double entropy_loss(const Matrix& probs) {
  if (probs.rows() == 0) return 0.0;
  double sum = 0.0;
  for (double p : probs.data())
    if (p > 0.0) sum -= p * std::log(p);
  return sum / static_cast<double>(probs.rows());
}

}  // namespace sntg
