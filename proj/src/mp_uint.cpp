#include "vanet/mp_uint.hpp"

#include <cctype>
#include <iterator>
#include <limits>
#include <stdexcept>

namespace vanet {

namespace mp = boost::multiprecision;

MpUint MpUint::from_bytes(std::span<const std::uint8_t> big_endian) {
  MpUint out;
  if (!big_endian.empty()) {
    mp::import_bits(out.value_, big_endian.begin(), big_endian.end(), 8, true);
  }
  return out;
}

MpUint MpUint::from_hex(const std::string& hex) {
  if (hex.empty()) throw std::invalid_argument("empty hex string");
  for (char c : hex) {
    if (std::isxdigit(static_cast<unsigned char>(c)) == 0) {
      throw std::invalid_argument("invalid hex digit in '" + hex + "'");
    }
  }
  return from_backend(Backend("0x" + hex));
}

MpUint MpUint::from_backend(Backend v) {
  if (v < 0) throw std::domain_error("MpUint cannot hold a negative value");
  MpUint out;
  out.value_ = std::move(v);
  return out;
}

std::vector<std::uint8_t> MpUint::to_bytes() const {
  if (value_ == 0) return {0};
  std::vector<std::uint8_t> out;
  out.reserve((bit_length() + 7) / 8);
  mp::export_bits(value_, std::back_inserter(out), 8, true);
  return out;
}

std::string MpUint::to_hex() const {
  std::string s = value_.str(0, std::ios_base::hex);
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::string MpUint::to_string() const { return value_.str(); }

std::size_t MpUint::bit_length() const {
  if (value_ == 0) return 0;
  return static_cast<std::size_t>(mp::msb(value_)) + 1;
}

bool MpUint::bit(std::size_t index) const {
  return mp::bit_test(value_, static_cast<unsigned>(index));
}

bool MpUint::is_odd() const { return mp::bit_test(value_, 0); }

std::uint64_t MpUint::low_u64() const {
  return static_cast<std::uint64_t>(value_ & Backend(std::numeric_limits<std::uint64_t>::max()));
}

MpUint& MpUint::operator+=(const MpUint& rhs) {
  value_ += rhs.value_;
  return *this;
}

MpUint& MpUint::operator-=(const MpUint& rhs) {
  if (rhs.value_ > value_) throw std::domain_error("MpUint subtraction underflow");
  value_ -= rhs.value_;
  return *this;
}

MpUint& MpUint::operator*=(const MpUint& rhs) {
  value_ *= rhs.value_;
  return *this;
}

MpUint& MpUint::operator%=(const MpUint& rhs) {
  if (rhs.value_ == 0) throw std::domain_error("MpUint modulo by zero");
  value_ %= rhs.value_;
  return *this;
}

MpUint& MpUint::operator/=(const MpUint& rhs) {
  if (rhs.value_ == 0) throw std::domain_error("MpUint division by zero");
  value_ /= rhs.value_;
  return *this;
}

MpUint& MpUint::operator<<=(std::size_t n) {
  value_ <<= n;
  return *this;
}

MpUint& MpUint::operator>>=(std::size_t n) {
  value_ >>= n;
  return *this;
}

}  // namespace vanet
