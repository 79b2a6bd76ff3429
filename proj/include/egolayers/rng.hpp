#pragma once

#include <cmath>
#include <cstdint>

#include "egolayers/common.hpp"

namespace egolayers {

/// SplitMix64 with hand-rolled samplers. Everything random in this project
/// goes through this class so that seeded runs are bit-identical across
/// platforms and standard-library versions (std::*_distribution is
/// implementation-defined).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). Lemire multiply with rejection; unbiased.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw ArgumentError("below(0)");
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next()) * n;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool bernoulli(double p) { return next_double() < p; }

  /// floor(x) or ceil(x), picked so the expectation is exactly x.
  std::int64_t bernoulli_round(double x) {
    const double f = std::floor(x);
    return static_cast<std::int64_t>(f) + (bernoulli(x - f) ? 1 : 0);
  }

  /// Standard normal via Box-Muller (cosine branch only).
  double normal() {
    double u1 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    const double u2 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.14159265358979323846 * u2);
  }

  /// Poisson sample. Knuth's product method up to lambda = 500 (the
  /// running product stays far above double underflow there); larger
  /// means fall back to a rounded normal approximation.
  std::uint64_t poisson(double lambda) {
    if (!(lambda > 0.0)) return 0;
    if (lambda <= 500.0) {
      const double limit = std::exp(-lambda);
      std::uint64_t k = 0;
      double p = 1.0;
      do {
        ++k;
        p *= next_double();
      } while (p > limit);
      return k - 1;
    }
    const double g = lambda + std::sqrt(lambda) * normal();
    return g <= 0.0 ? 0 : static_cast<std::uint64_t>(std::llround(g));
  }

 private:
  std::uint64_t state_;
};

/// SplitMix64 finalizer as a standalone mixer.
inline std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Independent substream for (seed, index). Used for per-ego generation so
/// parallel workers draw identical values regardless of scheduling.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(mix64(seed ^ mix64(index + 0x9E3779B97F4A7C15ull)));
}

}  // namespace egolayers
