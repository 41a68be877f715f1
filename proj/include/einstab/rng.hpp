#pragma once

#include <cstdint>
#include <random>

namespace einstab {

/// Deterministic RNG wrapper. Draws are derived from raw mt19937_64
/// output only, so sequences are reproducible across standard library
/// implementations (distribution classes are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [lo, hi] (inclusive); modulo bias is irrelevant
  /// for the tiny ranges used here.
  long long int_in(long long lo, long long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long long>(next() % span);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace einstab
