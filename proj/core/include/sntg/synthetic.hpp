#ifndef SNTG_SYNTHETIC_HPP
#define SNTG_SYNTHETIC_HPP

#include <cstddef>

#include "sntg/dataset.hpp"
#include "sntg/rng.hpp"

namespace sntg {

// Two interleaving half-circles, n/2 points per class, all rows labeled.
// Class 0 traces (cos t, sin t), class 1 traces (1 - cos t, 1/2 - sin t),
// t in [0, pi], plus isotropic Gaussian noise.
Dataset gen_two_moons(std::size_t n, double noise_sd, Rng& rng);

// Four Archimedean spiral arms 90 degrees apart, n/4 points per class.
// Arm k reuses the same angle draws, so with zero noise rotating arm k by
// 90 degrees lands exactly on arm k+1.
Dataset gen_four_spins(std::size_t n, double noise_sd, Rng& rng);

}  // namespace sntg

#endif
