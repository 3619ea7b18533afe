#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "vanet/mp_uint.hpp"
#include "vanet/random_source.hpp"

namespace vanet::dh {

enum class DhErrc {
  InvalidModulus,
  ParameterTooSmall,
  ParameterTooLarge,
  InvalidPeerValue,
  InvalidParams,
};

class DhError : public std::runtime_error {
 public:
  DhError(DhErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  DhErrc code() const noexcept { return code_; }

 private:
  DhErrc code_;
};

inline constexpr std::size_t kMinParamBits = 16;
inline constexpr std::size_t kMaxParamBits = 2048;
inline constexpr std::size_t kDefaultParamBits = 512;
inline constexpr unsigned kDefaultPrimalityRounds = 40;

struct DhParams {
  MpUint p;  // prime modulus
  MpUint w;  // base, 2 <= w < p

  friend bool operator==(const DhParams&, const DhParams&) = default;
};

struct DhKeyPair {
  MpUint private_exponent;
  MpUint public_value;

  friend bool operator==(const DhKeyPair&, const DhKeyPair&) = default;
};

struct SharedSecret {
  MpUint s;

  friend bool operator==(const SharedSecret&, const SharedSecret&) = default;
};

struct SymmetricKey {
  static constexpr std::size_t kSize = 16;
  std::array<std::uint8_t, kSize> bytes{};

  std::string to_hex() const;
  friend bool operator==(const SymmetricKey&, const SymmetricKey&) = default;
};

/// base^exponent mod modulus by left-to-right square-and-multiply.
/// Throws DhError(InvalidModulus) when modulus < 2.
MpUint mod_exp(const MpUint& base, const MpUint& exponent, const MpUint& modulus);

/// Miller-Rabin with `rounds` random bases drawn from `rng`.
/// Never reports a prime as composite.
bool is_probable_prime(const MpUint& n, unsigned rounds, RandomSource& rng);

/// Random prime p of exactly `bit_length` bits and a base w uniform in
/// [2, p-2].
DhParams generate_dh_params(std::size_t bit_length, RandomSource& rng,
                            unsigned rounds = kDefaultPrimalityRounds);

/// Private exponent uniform in [2, p-2]; public value w^x mod p.
DhKeyPair generate_keypair(const DhParams& params, RandomSource& rng);
DhKeyPair keypair_from_private(const DhParams& params, const MpUint& private_exponent);

/// Peer values outside [2, p-2] are rejected: 0 is out of the group and
/// 1, p-1 confine the secret to {1, p-1}.
bool is_acceptable_peer_value(const DhParams& params, const MpUint& peer_public);

SharedSecret compute_shared_secret(const DhParams& params, const MpUint& own_private,
                                   const MpUint& peer_public);

/// The 16 least-significant octets of s, big-endian, zero left-padded.
SymmetricKey derive_symmetric_key(const SharedSecret& secret);

}  // namespace vanet::dh
