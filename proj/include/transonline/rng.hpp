#pragma once

#include <cstdint>

namespace transonline {

/// 64-bit linear congruential generator with Knuth's MMIX constants:
///   state' = state * 6364136223846793005 + 1442695040888963407  (mod 2^64)
/// Every random choice in the project (stream bits, expert sampling) flows
/// through this generator so that outputs are bit-reproducible from a seed.
class Lcg64 {
 public:
  explicit Lcg64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ = state_ * kMul + kInc;
    return state_;
  }

  /// Uniform bit: the top bit of the next state.
  int next_bit() { return static_cast<int>(next_u64() >> 63); }

  /// Uniform-ish index in [0, n); n is tiny here so modulo bias is moot.
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
  }

 private:
  static constexpr std::uint64_t kMul = 6364136223846793005ull;
  static constexpr std::uint64_t kInc = 1442695040888963407ull;
  std::uint64_t state_;
};

}  // namespace transonline
