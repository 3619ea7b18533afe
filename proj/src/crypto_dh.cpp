#include "vanet/crypto_dh.hpp"

#include <algorithm>
#include <array>
#include <cstdio>

namespace vanet::dh {

namespace {

using Backend = MpUint::Backend;

constexpr std::uint32_t kSieveLimit = 2000;

// Odd primes below kSieveLimit, for trial division ahead of Miller-Rabin.
const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kSieveLimit, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i < kSieveLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint32_t j = i * i; j < kSieveLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

Backend mod_exp_raw(const Backend& base, const Backend& exponent, const Backend& modulus) {
  Backend result = 1;
  if (exponent == 0) return result % modulus;
  const Backend b = base % modulus;
  for (auto i = static_cast<long>(boost::multiprecision::msb(exponent)); i >= 0; --i) {
    result = (result * result) % modulus;
    if (boost::multiprecision::bit_test(exponent, static_cast<unsigned>(i))) {
      result = (result * b) % modulus;
    }
  }
  return result;
}

}  // namespace

std::string SymmetricKey::to_hex() const {
  std::string out;
  out.reserve(kSize * 2);
  char buf[3];
  for (auto b : bytes) {
    std::snprintf(buf, sizeof(buf), "%02x", b);
    out += buf;
  }
  return out;
}

MpUint mod_exp(const MpUint& base, const MpUint& exponent, const MpUint& modulus) {
  if (modulus < MpUint(2)) {
    throw DhError(DhErrc::InvalidModulus, "mod_exp: modulus must be at least 2");
  }
  return MpUint::from_backend(mod_exp_raw(base.backend(), exponent.backend(), modulus.backend()));
}

bool is_probable_prime(const MpUint& n, unsigned rounds, RandomSource& rng) {
  if (rounds == 0) throw std::invalid_argument("is_probable_prime: rounds must be >= 1");
  if (n < MpUint(2)) return false;
  for (std::uint32_t p : small_primes()) {
    if (n == MpUint(p)) return true;
    if ((n.backend() % p) == 0) return false;
  }

  const Backend& nb = n.backend();
  const Backend n_minus_1 = nb - 1;
  Backend d = n_minus_1;
  unsigned s = 0;
  while (!boost::multiprecision::bit_test(d, 0)) {
    d >>= 1;
    ++s;
  }

  const MpUint lo(2);
  const MpUint hi = n - MpUint(2);
  for (unsigned round = 0; round < rounds; ++round) {
    const Backend a = rng.uniform_range(lo, hi).backend();
    Backend x = mod_exp_raw(a, d, nb);
    if (x == 1 || x == n_minus_1) continue;
    bool witness = true;
    for (unsigned r = 1; r < s; ++r) {
      x = (x * x) % nb;
      if (x == n_minus_1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

DhParams generate_dh_params(std::size_t bit_length, RandomSource& rng, unsigned rounds) {
  if (bit_length < kMinParamBits) {
    throw DhError(DhErrc::ParameterTooSmall,
                  "generate_dh_params: bit length " + std::to_string(bit_length) +
                      " is below the minimum of " + std::to_string(kMinParamBits));
  }
  if (bit_length > kMaxParamBits) {
    throw DhError(DhErrc::ParameterTooLarge,
                  "generate_dh_params: bit length " + std::to_string(bit_length) +
                      " exceeds the maximum of " + std::to_string(kMaxParamBits));
  }

  MpUint p;
  for (;;) {
    Backend candidate = rng.random_bits(bit_length).backend();
    boost::multiprecision::bit_set(candidate, static_cast<unsigned>(bit_length - 1));
    boost::multiprecision::bit_set(candidate, 0);
    p = MpUint::from_backend(std::move(candidate));
    if (is_probable_prime(p, rounds, rng)) break;
  }
  MpUint w = rng.uniform_range(MpUint(2), p - MpUint(2));
  return DhParams{std::move(p), std::move(w)};
}

DhKeyPair keypair_from_private(const DhParams& params, const MpUint& private_exponent) {
  return DhKeyPair{private_exponent, mod_exp(params.w, private_exponent, params.p)};
}

DhKeyPair generate_keypair(const DhParams& params, RandomSource& rng) {
  if (params.p < MpUint(5) || params.w < MpUint(2) || params.w >= params.p) {
    throw DhError(DhErrc::InvalidParams, "generate_keypair: parameters out of range");
  }
  const MpUint lo(2);
  const MpUint hi = params.p - MpUint(2);
  // Exponents whose public value a peer would reject are redrawn; the
  // result is uniform over the usable part of [2, p-2].
  for (;;) {
    DhKeyPair kp = keypair_from_private(params, rng.uniform_range(lo, hi));
    if (is_acceptable_peer_value(params, kp.public_value)) return kp;
  }
}

bool is_acceptable_peer_value(const DhParams& params, const MpUint& peer_public) {
  if (params.p < MpUint(5)) return false;
  return peer_public >= MpUint(2) && peer_public <= params.p - MpUint(2);
}

SharedSecret compute_shared_secret(const DhParams& params, const MpUint& own_private,
                                   const MpUint& peer_public) {
  if (!is_acceptable_peer_value(params, peer_public)) {
    throw DhError(DhErrc::InvalidPeerValue,
                  "compute_shared_secret: peer public value outside [2, p-2]");
  }
  return SharedSecret{mod_exp(peer_public, own_private, params.p)};
}

SymmetricKey derive_symmetric_key(const SharedSecret& secret) {
  SymmetricKey key;
  const std::vector<std::uint8_t> be = secret.s.to_bytes();
  const std::size_t take = be.size() < SymmetricKey::kSize ? be.size() : SymmetricKey::kSize;
  std::copy(be.end() - static_cast<std::ptrdiff_t>(take), be.end(),
            key.bytes.end() - static_cast<std::ptrdiff_t>(take));
  return key;
}

}  // namespace vanet::dh
