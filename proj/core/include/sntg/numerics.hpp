#ifndef SNTG_NUMERICS_HPP
#define SNTG_NUMERICS_HPP

#include <cstddef>
#include <vector>

#include "sntg/matrix.hpp"
#include "sntg/rng.hpp"

namespace sntg {

// Row-wise softmax with max-subtraction so large logits cannot overflow.
Matrix softmax_rows(const Matrix& logits);
std::vector<double> softmax(const std::vector<double>& logits);

// Elementwise x if x >= 0 else slope * x. slope must be in [0, 1).
Matrix leaky_relu(const Matrix& x, double slope);

// i.i.d. N(0, sigma^2) samples; sigma = 0 yields exact zeros.
Matrix gaussian_noise(std::size_t rows, std::size_t cols, double sigma, Rng& rng);

}  // namespace sntg

#endif
