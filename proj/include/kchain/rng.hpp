#pragma once

#include <cstdint>
#include <stdexcept>

namespace kchain {

/// SplitMix64. State advances by 0x9E3779B97F4A7C15; output applies the
/// 30/27/31 xor-shift-multiply finalizer with multipliers 0xBF58476D1CE4E5B9
/// and 0x94D049BB133111EB. These constants are part of the report contract:
/// any implementation repeating them reproduces every seeded draw bit for bit.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw from [0, bound), unbiased via rejection of the low
  /// 2^64 mod bound values.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("below(0)");
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  std::uint64_t state_;
};

/// SplitMix64 output finalizer as a standalone mixing step.
inline std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Per-trial seed from (master seed, cell index, trial index). Trials stay
/// independent of execution order, so parallel schedules cannot change results.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t cell, std::uint64_t trial) {
  return mix64(mix64(master + 0x9E3779B97F4A7C15ULL * (cell + 1)) +
               0x9E3779B97F4A7C15ULL * (trial + 1));
}

}  // namespace kchain
