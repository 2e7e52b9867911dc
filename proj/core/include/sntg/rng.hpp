#ifndef SNTG_RNG_HPP
#define SNTG_RNG_HPP

#include <cstdint>
#include <vector>

namespace sntg {

// Counter-based random generator. Each draw hashes (key, counter), so a
// generator is a value type: copying it replays the same stream, and child
// streams derived from (key, stream id) are independent of how much the
// parent has been consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(mix64(seed ^ 0x6a09e667f3bcc908ull)) {}

  // Independent substream; deterministic in (parent key, stream id).
  Rng child(std::uint64_t stream) const {
    Rng c(0);
    c.key_ = mix64(key_ ^ mix64(stream + 0xbb67ae8584caa73bull));
    c.counter_ = 0;
    return c;
  }

  std::uint64_t next_u64() { return mix64(key_ ^ mix64(++counter_)); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on {0, ..., n-1}.
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Standard normal via Box-Muller; consumes exactly two words per call.
  double normal() {
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    return box_muller(u1, u2);
  }

  double normal(double sigma) { return sigma * normal(); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = uniform_index(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  static std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  static double box_muller(double u1, double u2);

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace sntg

#endif
