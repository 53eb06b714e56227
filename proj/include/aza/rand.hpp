#pragma once

#include <cstdint>
#include <random>

#include "aza/scalar.hpp"

namespace aza {

/// Deterministic generator; every randomized routine takes one explicitly so
/// runs with the same seed reproduce bit for bit.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n) {
    std::uniform_int_distribution<std::uint64_t> d(0, n - 1);
    return d(eng_);
  }

  /// Uniform in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    std::uniform_int_distribution<std::int64_t> d(lo, hi);
    return d(eng_);
  }

  /// Uniform in [0, n), n > 0.
  Int int_below(const Int& n) {
    std::uint64_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    while (true) {
      Int r = 0;
      for (std::uint64_t i = 0; i < bits; i += 32) {
        r <<= 32;
        r += static_cast<unsigned long>(next() & 0xffffffffu);
      }
      r = mod_floor(r, Int(1) << bits);
      if (r < n) return r;
    }
  }

private:
  std::mt19937_64 eng_;
};

inline constexpr std::uint64_t kDefaultSeed = 1729;

}  // namespace aza
