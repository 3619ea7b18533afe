#pragma once

#include <cstdint>
#include <random>

#include "vanet/mp_uint.hpp"

namespace vanet {

/// Seeded, platform-independent random stream.
///
/// Only the raw mt19937_64 output is used; every derived draw (doubles,
/// bounded integers) is computed here so results do not depend on the
/// standard library's distribution implementations.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 bits of resolution.
  double uniform01();
  double uniform(double lo, double hi);

  /// Uniform integer in [0, bound), bound > 0. Rejection sampled.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform integer with exactly `bits` random low bits (no forcing).
  MpUint random_bits(std::size_t bits);

  /// Uniform integer in [lo, hi] inclusive, lo <= hi. Rejection sampled.
  MpUint uniform_range(const MpUint& lo, const MpUint& hi);

  /// Derives an independent child seed. Stateless helper (splitmix64).
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
};

}  // namespace vanet
