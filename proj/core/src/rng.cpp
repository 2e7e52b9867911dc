#include "sntg/rng.hpp"

#include <cmath>

namespace sntg {

double Rng::box_muller(double u1, double u2) {
  // u1 in (0, 1], so the log is finite.
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace sntg
