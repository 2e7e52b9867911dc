#ifndef SNTG_SCHEDULES_HPP
#define SNTG_SCHEDULES_HPP

#include <cmath>
#include <cstddef>

namespace sntg {

// w(t) = exp(-5 (1 - t/length)^2) for t < length, 1 afterwards.
inline double rampup_weight(std::size_t t, std::size_t length) {
  if (length == 0 || t >= length) return 1.0;
  const double x = 1.0 - static_cast<double>(t) / static_cast<double>(length);
  return std::exp(-5.0 * x * x);
}

// 1 until the final `length` epochs, then exp(-12.5 (1 - (T-t)/length)^2).
inline double rampdown_factor(std::size_t t, std::size_t total, std::size_t length) {
  const std::size_t remaining = total - t;
  if (length == 0 || remaining >= length) return 1.0;
  const double x = 1.0 - static_cast<double>(remaining) / static_cast<double>(length);
  return std::exp(-12.5 * x * x);
}

}  // namespace sntg

#endif
