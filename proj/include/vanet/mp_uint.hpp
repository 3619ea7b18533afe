#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace vanet {

/// Arbitrary-precision non-negative integer.
///
/// Thin value wrapper over boost::multiprecision::cpp_int that keeps the
/// unsigned domain: subtraction below zero throws std::domain_error.
class MpUint {
 public:
  using Backend = boost::multiprecision::cpp_int;

  MpUint() = default;
  MpUint(std::uint64_t v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  /// Big-endian magnitude; an empty span is zero.
  static MpUint from_bytes(std::span<const std::uint8_t> big_endian);
  static MpUint from_hex(const std::string& hex);
  static MpUint from_backend(Backend v);

  /// Minimal big-endian magnitude. Zero encodes as a single 0x00 octet.
  std::vector<std::uint8_t> to_bytes() const;
  std::string to_hex() const;
  std::string to_string() const;

  /// Number of significant bits; zero for the value 0.
  std::size_t bit_length() const;
  bool bit(std::size_t index) const;
  bool is_zero() const { return value_ == 0; }
  bool is_odd() const;
  std::uint64_t low_u64() const;

  const Backend& backend() const { return value_; }

  MpUint& operator+=(const MpUint& rhs);
  MpUint& operator-=(const MpUint& rhs);
  MpUint& operator*=(const MpUint& rhs);
  MpUint& operator%=(const MpUint& rhs);
  MpUint& operator/=(const MpUint& rhs);
  MpUint& operator<<=(std::size_t n);
  MpUint& operator>>=(std::size_t n);

  friend MpUint operator+(MpUint a, const MpUint& b) { return a += b; }
  friend MpUint operator-(MpUint a, const MpUint& b) { return a -= b; }
  friend MpUint operator*(MpUint a, const MpUint& b) { return a *= b; }
  friend MpUint operator%(MpUint a, const MpUint& b) { return a %= b; }
  friend MpUint operator/(MpUint a, const MpUint& b) { return a /= b; }
  friend MpUint operator<<(MpUint a, std::size_t n) { return a <<= n; }
  friend MpUint operator>>(MpUint a, std::size_t n) { return a >>= n; }

  friend bool operator==(const MpUint& a, const MpUint& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const MpUint& a, const MpUint& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Backend value_{0};
};

}  // namespace vanet
