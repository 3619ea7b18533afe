#include <doctest.h>

#include "oracles.hpp"
#include "vanet/crypto_dh.hpp"

using namespace vanet;
using namespace vanet::dh;

TEST_CASE("mod_exp small values") {
  CHECK(mod_exp(5, 6, 23) == MpUint(8));
  CHECK(mod_exp(5, 0, 23) == MpUint(1));
  CHECK(mod_exp(5, 15, 23) == MpUint(19));
  CHECK(mod_exp(0, 0, 2) == MpUint(1));
  CHECK(mod_exp(7, 3, 2) == MpUint(1));
}

TEST_CASE("mod_exp rejects modulus below 2") {
  for (std::uint64_t m : {0ULL, 1ULL}) {
    try {
      mod_exp(3, 4, m);
      FAIL("expected DhError");
    } catch (const DhError& e) {
      CHECK(e.code() == DhErrc::InvalidModulus);
    }
  }
}

TEST_CASE("mod_exp agrees with repeated multiplication") {
  RandomSource rng(99);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t m = 2 + rng.below(999);
    const std::uint64_t e = rng.below(1001);
    const std::uint64_t b = rng.below(5000);
    REQUIRE(mod_exp(b, e, m).low_u64() == oracle::naive_pow_mod(b, e, m));
  }
}

TEST_CASE("mod_exp handles large operands") {
  // (2^521 - 1) is prime, so 3^(p-1) == 1 mod p.
  const MpUint p = (MpUint(1) << 521) - MpUint(1);
  CHECK(mod_exp(3, p - MpUint(1), p) == MpUint(1));
  // Fermat F5 = 2^32 + 1 = 641 * 6700417: 2^64 == 1 mod F5.
  CHECK(mod_exp(2, 64, (MpUint(1) << 32) + MpUint(1)) == MpUint(1));
}

TEST_CASE("is_probable_prime") {
  RandomSource rng(1);
  CHECK(is_probable_prime(23, 20, rng));
  CHECK_FALSE(is_probable_prime(25, 20, rng));
  CHECK(is_probable_prime(2, 20, rng));
  CHECK_FALSE(is_probable_prime(0, 20, rng));
  CHECK_FALSE(is_probable_prime(1, 20, rng));

  SUBCASE("matches trial division below 20000") {
    for (std::uint64_t n = 0; n < 20000; ++n) {
      REQUIRE(is_probable_prime(n, 8, rng) == oracle::is_prime_trial(n));
    }
  }
  SUBCASE("Carmichael numbers and strong pseudoprimes are composite") {
    for (std::uint64_t n : {561ULL, 1105ULL, 1729ULL, 2465ULL, 2821ULL, 6601ULL, 8911ULL,
                            2047ULL, 3215031751ULL, 4759123141ULL}) {
      CHECK_FALSE(is_probable_prime(n, 40, rng));
    }
  }
  SUBCASE("large known primes") {
    CHECK(is_probable_prime((MpUint(1) << 127) - MpUint(1), 40, rng));
    CHECK(is_probable_prime((MpUint(1) << 521) - MpUint(1), 40, rng));
    CHECK_FALSE(is_probable_prime((MpUint(1) << 128) + MpUint(1), 40, rng));
  }
  SUBCASE("deterministic for a seed") {
    RandomSource a(5);
    RandomSource b(5);
    const MpUint n = (MpUint(1) << 89) - MpUint(1);
    CHECK(is_probable_prime(n, 10, a) == is_probable_prime(n, 10, b));
    CHECK(a.next_u64() == b.next_u64());
  }
}

TEST_CASE("generate_dh_params") {
  SUBCASE("16-bit") {
    RandomSource rng(7);
    const DhParams params = generate_dh_params(16, rng);
    CHECK(params.p.bit_length() == 16);
    CHECK(oracle::is_prime_trial(params.p.low_u64()));
    CHECK(params.w >= MpUint(2));
    CHECK(params.w < params.p);
  }
  SUBCASE("512-bit") {
    RandomSource rng(1);
    const DhParams params = generate_dh_params(512, rng);
    RandomSource check(1234);
    CHECK(params.p.bit_length() == 512);
    CHECK(is_probable_prime(params.p, 40, check));
    CHECK(params.w >= MpUint(2));
    CHECK(params.w <= params.p - MpUint(2));
  }
  SUBCASE("too small") {
    RandomSource rng(1);
    try {
      generate_dh_params(8, rng);
      FAIL("expected DhError");
    } catch (const DhError& e) {
      CHECK(e.code() == DhErrc::ParameterTooSmall);
    }
  }
  SUBCASE("too large") {
    RandomSource rng(1);
    CHECK_THROWS_AS(generate_dh_params(4096, rng), DhError);
  }
  SUBCASE("deterministic for a seed") {
    RandomSource a(42);
    RandomSource b(42);
    const DhParams pa = generate_dh_params(128, a);
    const DhParams pb = generate_dh_params(128, b);
    CHECK(pa == pb);
    CHECK(generate_keypair(pa, a) == generate_keypair(pb, b));
  }
}

TEST_CASE("keypairs") {
  const DhParams params{23, 5};
  CHECK(keypair_from_private(params, 6).public_value == MpUint(8));
  CHECK(keypair_from_private(params, 15).public_value == MpUint(19));

  RandomSource rng(3);
  for (int i = 0; i < 500; ++i) {
    const DhKeyPair kp = generate_keypair(params, rng);
    REQUIRE(kp.private_exponent >= MpUint(2));
    REQUIRE(kp.private_exponent <= MpUint(21));
    REQUIRE(kp.public_value > MpUint(0));
    REQUIRE(kp.public_value < params.p);
    REQUIRE(kp.public_value == mod_exp(params.w, kp.private_exponent, params.p));
  }
}

TEST_CASE("compute_shared_secret") {
  const DhParams params{23, 5};
  CHECK(compute_shared_secret(params, 6, 19).s == MpUint(2));
  CHECK(compute_shared_secret(params, 15, 8).s == MpUint(2));

  for (std::uint64_t bad : {0ULL, 1ULL, 22ULL, 23ULL, 100ULL}) {
    try {
      compute_shared_secret(params, 6, bad);
      FAIL("expected DhError");
    } catch (const DhError& e) {
      CHECK(e.code() == DhErrc::InvalidPeerValue);
    }
  }
}

TEST_CASE("derive_symmetric_key") {
  SymmetricKey two;
  two.bytes[15] = 0x02;
  CHECK(derive_symmetric_key({2}) == two);
  CHECK(derive_symmetric_key({0}) == SymmetricKey{});

  SymmetricKey one;
  one.bytes[15] = 0x01;
  CHECK(derive_symmetric_key({(MpUint(1) << 128) + MpUint(1)}) == one);

  SUBCASE("injective below 2^128") {
    RandomSource rng(11);
    for (int i = 0; i < 2000; ++i) {
      const MpUint a = rng.random_bits(1 + rng.below(128));
      const MpUint b = rng.random_bits(1 + rng.below(128));
      REQUIRE((derive_symmetric_key({a}) == derive_symmetric_key({b})) == (a == b));
    }
  }
}

TEST_CASE("agreement at 256 bits") {
  RandomSource rng(21);
  const DhParams params = generate_dh_params(256, rng);
  for (int i = 0; i < 50; ++i) {
    const DhKeyPair a = generate_keypair(params, rng);
    const DhKeyPair b = generate_keypair(params, rng);
    const auto ka = derive_symmetric_key(compute_shared_secret(params, a.private_exponent, b.public_value));
    const auto kb = derive_symmetric_key(compute_shared_secret(params, b.private_exponent, a.public_value));
    REQUIRE(ka == kb);
  }
}
