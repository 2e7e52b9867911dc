#include "sntg/synthetic.hpp"

#include <cmath>

#include "sntg/errors.hpp"

namespace sntg {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Dataset gen_two_moons(std::size_t n, double noise_sd, Rng& rng) {
  if (n % 2 != 0) throw DataError("gen_two_moons: n must be even");
  if (noise_sd < 0.0) throw DataError("gen_two_moons: negative noise_sd");

  Dataset ds;
  ds.features = Matrix(n, 2);
  ds.labels.resize(n);
  ds.labeled_mask.assign(n, 1);
  ds.num_classes = 2;

  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = rng.uniform() * kPi;
    double x, y;
    if (i < half) {
      x = std::cos(t);
      y = std::sin(t);
      ds.labels[i] = 0;
    } else {
      x = 1.0 - std::cos(t);
      y = 0.5 - std::sin(t);
      ds.labels[i] = 1;
    }
    ds.features(i, 0) = x + rng.normal(noise_sd);
    ds.features(i, 1) = y + rng.normal(noise_sd);
  }
  return ds;
}

Dataset gen_four_spins(std::size_t n, double noise_sd, Rng& rng) {
  if (n % 4 != 0) throw DataError("gen_four_spins: n must be divisible by 4");
  if (noise_sd < 0.0) throw DataError("gen_four_spins: negative noise_sd");

  Dataset ds;
  ds.features = Matrix(n, 2);
  ds.labels.resize(n);
  ds.labeled_mask.assign(n, 1);
  ds.num_classes = 4;

  const std::size_t per_arm = n / 4;
  const double theta_max = 3.0 * kPi;  // one and a half turns
  const double r0 = 0.5;
  const double r1 = 3.0;

  std::vector<double> thetas(per_arm);
  for (double& t : thetas) t = rng.uniform() * theta_max;

  for (std::size_t arm = 0; arm < 4; ++arm) {
    const double offset = static_cast<double>(arm) * kPi / 2.0;
    for (std::size_t i = 0; i < per_arm; ++i) {
      const double t = thetas[i];
      const double r = r0 + (r1 - r0) * t / theta_max;
      const std::size_t row = arm * per_arm + i;
      ds.features(row, 0) = r * std::cos(t + offset) + rng.normal(noise_sd);
      ds.features(row, 1) = r * std::sin(t + offset) + rng.normal(noise_sd);
      ds.labels[row] = static_cast<int>(arm);
    }
  }
  return ds;
}

}  // namespace sntg
