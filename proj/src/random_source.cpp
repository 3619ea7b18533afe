#include "vanet/random_source.hpp"

#include <limits>
#include <stdexcept>

namespace vanet {

double RandomSource::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomSource::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

std::uint64_t RandomSource::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("RandomSource::below: bound must be positive");
  // Largest multiple of bound that fits; draws at or above it are rejected.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return x % bound;
}

MpUint RandomSource::random_bits(std::size_t bits) {
  MpUint out;
  std::size_t remaining = bits;
  while (remaining > 0) {
    const std::size_t take = remaining < 64 ? remaining : 64;
    std::uint64_t word = next_u64();
    if (take < 64) word &= (std::uint64_t{1} << take) - 1;
    out <<= take;
    out += MpUint(word);
    remaining -= take;
  }
  return out;
}

MpUint RandomSource::uniform_range(const MpUint& lo, const MpUint& hi) {
  if (hi < lo) throw std::invalid_argument("RandomSource::uniform_range: empty range");
  const MpUint span = hi - lo;
  const std::size_t bits = span.bit_length();
  if (bits == 0) return lo;
  MpUint x = random_bits(bits);
  while (x > span) x = random_bits(bits);
  return lo + x;
}

std::uint64_t RandomSource::mix(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace vanet
