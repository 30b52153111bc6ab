#include <array>
#include <set>
#include <utility>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "crs/cipher.hpp"
#include "crs/crsalg.hpp"
#include "crs/rng.hpp"
#include "crs/sha512.hpp"

using namespace crs;

TEST_CASE("sha512 known digest", "[cipher]") {
  auto const d = sha512(reinterpret_cast<std::uint8_t const*>("abc"), 3);
  std::array<std::uint8_t, 64> const expected{
      0xdd, 0xaf, 0x35, 0xa1, 0x93, 0x61, 0x7a, 0xba, 0xcc, 0x41, 0x73,
      0x49, 0xae, 0x20, 0x41, 0x31, 0x12, 0xe6, 0xfa, 0x4e, 0x89, 0xa9,
      0x7e, 0xa2, 0x0a, 0x9e, 0xee, 0xe6, 0x4b, 0x55, 0xd3, 0x9a, 0x21,
      0x92, 0x99, 0x2a, 0x27, 0x4f, 0xc1, 0xa8, 0x36, 0xba, 0x3c, 0x23,
      0xa3, 0xfe, 0xeb, 0xbd, 0x45, 0x4d, 0x44, 0x23, 0x64, 0x3c, 0xe8,
      0x0e, 0x2a, 0x9a, 0xc9, 0x4f, 0xa5, 0x4c, 0xa4, 0x9f};
  REQUIRE(d == expected);
}

TEST_CASE("derive_sandwich frozen values", "[cipher]") {
  // Independently computed from the byte layout
  // BE64(index xor secret) || BE64(counter) || 0x01.
  REQUIRE(derive_sandwich(0, 201, 257) == 12);
  REQUIRE(derive_sandwich(1, 201, 257) == 162);
  REQUIRE(derive_sandwich(5, 201, 257) == 214);
  REQUIRE(derive_sandwich(4294967295ull, 201, 257) == 63);
  REQUIRE(derive_sandwich(2, 201, 7) == 3);
  REQUIRE(derive_sandwich(0, 0, 7) == 6);        // counter retries once
  REQUIRE(derive_sandwich(3, 11, 15) == 4);      // counter retries twice
  REQUIRE(derive_sandwich(1, 201, 6) == 5);      // five retries
  REQUIRE(derive_sandwich(2, 201, 6) == 5);
  REQUIRE(derive_sandwich(123456789, 987654321, 1000003) == 827344);
  // Modulus 2 has a single unit.
  REQUIRE(derive_sandwich(9, 9, 2) == 1);
  REQUIRE_THROWS_AS(derive_sandwich(0, 0, 1), std::invalid_argument);
}

TEST_CASE("cs_power is the sandwich-power map", "[cipher]") {
  REQUIRE(cs_power(2, 3, 5, 7) == 2);   // (2*3)^4 * 2 = 2 mod 7
  REQUIRE(cs_power(2, 3, 1, 7) == 2);   // k = 1 is the identity
  REQUIRE(cs_power(0, 3, 5, 7) == 0);   // absorbing
  REQUIRE_THROWS_AS(cs_power(2, 3, 0, 7), std::invalid_argument);
}

TEST_CASE("worked instance mod 7", "[cipher]") {
  SymmetricKey key;
  key.modulus = Modulus::of(7);
  key.group_order = 6;
  key.encrypt_exp = 5;
  key.decrypt_exp = 5;  // 5*5 = 25 = 1 mod 6
  key.secret = 201;
  key.index_bits = 8;

  // Index 2 derives the sandwich entry 3, reproducing the hand-worked
  // instance: g = 2 encrypts to body 2.
  CiphertextBlock const c = cs_encrypt_with_index(2, 2, key);
  REQUIRE(c.index == 2);
  REQUIRE(c.body == 2);
  REQUIRE(cs_decrypt(c, key) == 2);

  for (u64 g = 0; g < 7; ++g) {
    for (u64 idx = 0; idx < 16; ++idx) {
      REQUIRE(cs_decrypt(cs_encrypt_with_index(g, idx, key), key) == g);
    }
  }
  REQUIRE_THROWS_AS(cs_encrypt_with_index(2, 256, key),
                    std::invalid_argument);
}

TEST_CASE("keygen validates the modulus", "[cipher]") {
  Rng rng(7);
  REQUIRE_THROWS_AS(keygen(Modulus::of(4), rng, 8), BadModulusError);
  REQUIRE_THROWS_AS(keygen(Modulus::of(8), rng, 8), BadModulusError);
  REQUIRE_THROWS_AS(keygen(Modulus::of(30), rng, 8), BadModulusError);
  REQUIRE_THROWS_AS(keygen(Modulus::of(9), rng, 8), BadModulusError);
  REQUIRE_THROWS_AS(keygen(Modulus::of(7), rng, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(keygen(Modulus::of(7), rng, 65), std::invalid_argument);

  SymmetricKey const k = keygen(Modulus::of(257), rng, 32);
  REQUIRE(k.group_order == 256);
  REQUIRE(k.encrypt_exp % 2 == 1);
  REQUIRE(mul_mod(k.encrypt_exp, k.decrypt_exp, 256) == 1);

  // Same seed, same key.
  Rng a(42), b(42);
  SymmetricKey const ka = keygen(Modulus::of(257), a, 16);
  SymmetricKey const kb = keygen(Modulus::of(257), b, 16);
  REQUIRE(ka.encrypt_exp == kb.encrypt_exp);
  REQUIRE(ka.secret == kb.secret);
}

TEST_CASE("round trips for prime and two-prime moduli", "[cipher]") {
  Rng rng(11);
  for (u64 n : {u64{2}, u64{3}, u64{15}, u64{257}, u64{1009}}) {
    SymmetricKey const key = keygen(Modulus::of(n), rng, 16);
    for (u64 g = 0; g < std::min<u64>(n, 64); ++g) {
      CiphertextBlock const c = cs_encrypt(g, key, rng);
      REQUIRE(cs_decrypt(c, key) == g);
    }
  }
}

TEST_CASE("cs_encrypt matches rees_power", "[cipher]") {
  Rng rng(123);
  SymmetricKey const key = keygen(Modulus::of(257), rng, 8);
  for (u64 g : {u64{1}, u64{2}, u64{99}, u64{200}, u64{256}}) {
    u64 const idx = uniform_below(rng, 256);
    CiphertextBlock const c = cs_encrypt_with_index(g, idx, key);
    u64 const p_i = derive_sandwich(idx, key.secret, 257);
    ReesMatrixSemigroup const s(Modulus::of(257), 1, 1, {p_i});
    REQUIRE(rees_power({0, g, 0}, key.encrypt_exp, s).g == c.body);
  }
}

TEST_CASE("group mode", "[cipher]") {
  REQUIRE(group_encrypt(0, 75, 257) == 0);
  REQUIRE(group_encrypt(1, 75, 257) == 1);
  u64 const d = mod_inv(75, 256);
  for (u64 x = 0; x < 257; ++x) {
    REQUIRE(group_decrypt(group_encrypt(x, 75, 257), d, 257) == x);
  }
  REQUIRE_THROWS_AS(group_encrypt(5, 2, 257), NotCoprimeError);
}

TEST_CASE("crrsa worked instance mod 15", "[cipher]") {
  Modulus const n15 = Modulus::of(15);
  CrrsaBlock const c = crrsa_encrypt_with_mask(7, 2, 3, n15);
  REQUIRE(c.masked_sandwich == 8);
  REQUIRE(c.body == 7);
  REQUIRE(crrsa_decrypt(c, 3, n15) == 7);  // 3*3 = 9 = 1 mod phi(15)
}

TEST_CASE("crrsa round trips over all of Z_n", "[cipher]") {
  Rng rng(5);
  struct Instance {
    u64 n, e, d;
  };
  // e*d = 1 mod phi(n) for n in {15, 35, 77}.
  for (Instance const inst : {Instance{15, 3, 3}, Instance{35, 5, 5},
                              Instance{77, 7, 43}}) {
    Modulus const n = Modulus::of(inst.n);
    REQUIRE(mul_mod(inst.e, inst.d, n.phi) == 1);
    for (u64 g = 0; g < inst.n; ++g) {
      CrrsaBlock const c = crrsa_encrypt(g, inst.e, n, rng);
      REQUIRE(crrsa_decrypt(c, inst.d, n) == g);
    }
  }
}

TEST_CASE("crrsa validation", "[cipher]") {
  Modulus const n15 = Modulus::of(15);
  Rng rng(3);
  REQUIRE_THROWS_AS(crrsa_encrypt(2, 3, Modulus::of(7), rng),
                    BadModulusError);
  REQUIRE_THROWS_AS(crrsa_encrypt(2, 2, n15, rng), NotCoprimeError);
  REQUIRE_THROWS_AS(crrsa_encrypt_with_mask(2, 3, 3, n15), NotUnitError);
  REQUIRE_THROWS_AS(crrsa_encrypt_with_mask(2, 0, 3, n15), NotUnitError);
  // Corrupted first coordinate decrypts to a non-unit mask.
  REQUIRE_THROWS_AS(crrsa_decrypt({5, 7}, 3, n15), NotUnitError);
}

TEST_CASE("repeated encryption is nondeterministic", "[cipher]") {
  Rng rng(77);
  SymmetricKey const key = keygen(Modulus::of(257), rng, 16);
  int index_collisions = 0;
  std::set<std::pair<u64, u64>> seen;
  for (int t = 0; t < 1000; ++t) {
    CiphertextBlock const a = cs_encrypt(123, key, rng);
    CiphertextBlock const b = cs_encrypt(123, key, rng);
    REQUIRE(cs_decrypt(a, key) == 123);
    REQUIRE(cs_decrypt(b, key) == 123);
    index_collisions += a.index == b.index ? 1 : 0;
    seen.insert({a.index, a.body});
  }
  // Pairwise collision probability is 2^-16 per draw pair.
  REQUIRE(index_collisions <= 2);
  REQUIRE(seen.size() >= 990);
}

TEST_CASE("uniform_below spreads evenly over residues", "[cipher]") {
  Rng rng(0xABCDEF);
  constexpr int kDraws = 100000;
  constexpr u64 kBins = 257;
  std::vector<int> hits(kBins, 0);
  for (int t = 0; t < kDraws; ++t) {
    ++hits[uniform_below(rng, kBins)];
  }
  double const expected = double(kDraws) / double(kBins);
  double chi2 = 0;
  for (int h : hits) {
    double const d = h - expected;
    chi2 += d * d / expected;
  }
  // 256 degrees of freedom: mean 256, sd ~22.6.  The draw stream is
  // deterministic under the fixed seed, so this is a frozen regression.
  REQUIRE(chi2 > 150.0);
  REQUIRE(chi2 < 360.0);
}
