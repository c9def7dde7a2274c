#pragma once

#include <cmath>
#include <cstdint>

namespace blindrank {

// Self-contained splitmix64-based generator. Using our own instead of
// <random> distributions keeps streams byte-reproducible across standard
// library versions, which the serialized experiment outputs rely on.

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [-1, 1).
  double symmetric_uniform() { return 2.0 * uniform() - 1.0; }

  bool bernoulli(double p) { return uniform() < p; }

  double rademacher() { return (next_u64() & 1u) ? 1.0 : -1.0; }

  /// Standard normal via Marsaglia's polar method (second value cached).
  double gaussian() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double a, b, s;
    do {
      a = symmetric_uniform();
      b = symmetric_uniform();
      s = a * a + b * b;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = b * f;
    has_cached_ = true;
    return a * f;
  }

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace blindrank
