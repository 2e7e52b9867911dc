#include "sntg/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sntg {

static void softmax_row_inplace(double* x, std::size_t k) {
  double mx = x[0];
  for (std::size_t j = 1; j < k; ++j) mx = std::max(mx, x[j]);
  double sum = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    x[j] = std::exp(x[j] - mx);
    sum += x[j];
  }
  for (std::size_t j = 0; j < k; ++j) x[j] /= sum;
}

Matrix softmax_rows(const Matrix& logits) {
  Matrix out = logits;
  for (std::size_t i = 0; i < out.rows(); ++i) softmax_row_inplace(out.row(i), out.cols());
  return out;
}

std::vector<double> softmax(const std::vector<double>& logits) {
  if (logits.empty()) throw std::invalid_argument("softmax: empty input");
  std::vector<double> out = logits;
  softmax_row_inplace(out.data(), out.size());
  return out;
}

Matrix leaky_relu(const Matrix& x, double slope) {
  if (slope < 0.0 || slope >= 1.0) throw std::invalid_argument("leaky_relu: slope must be in [0, 1)");
  Matrix out = x;
  for (double& v : out.data())
    if (v < 0.0) v *= slope;
  return out;
}

Matrix gaussian_noise(std::size_t rows, std::size_t cols, double sigma, Rng& rng) {
  if (sigma < 0.0) throw std::invalid_argument("gaussian_noise: negative sigma");
  Matrix out(rows, cols);
  if (sigma == 0.0) return out;
  for (double& v : out.data()) v = rng.normal(sigma);
  return out;
}

}  // namespace sntg
