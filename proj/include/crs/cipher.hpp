#ifndef CRS_CIPHER_HPP_
#define CRS_CIPHER_HPP_

// The ciphers.
//
// Group mode is the classic discrete-log cipher x -> x^e mod p with
// decryption exponent e^{-1} mod p-1.
//
// Completely simple mode hides the base of the exponentiation behind a
// per-block sandwich entry: a block is (i, (g p_i)^{n-1} g mod N) where
// i is a random index, p_i is derived from i and the shared secret, and the
// exponent pair satisfies n m = 1 mod phi(N).  Decryption computes
// ((c p_i)^m) p_i^{-1}.
//
// The public-key variant transports the sandwich entry alongside the body:
// (p_i^e, (g p_i)^{e-1} g) over a two-prime modulus, decrypted with d.

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "crs/error.hpp"
#include "crs/modmath.hpp"
#include "crs/rng.hpp"
#include "crs/sha512.hpp"

namespace crs {

struct SymmetricKey {
  Modulus modulus;       // prime, or a product of two distinct primes
  u64 group_order;       // r = phi(modulus)
  u64 encrypt_exp;       // n, a unit mod r
  u64 decrypt_exp;       // m = n^{-1} mod r
  u64 secret;            // s, salts the index -> sandwich derivation
  unsigned index_bits;   // width of the index space; file formats need a
                         // multiple of 8, attack simulations use tiny values
};

// The core map of the completely simple scheme: (g * p)^{k-1} * g mod n.
// This is exactly the k-th power of (i, g, l) in a Rees matrix semigroup
// whose sandwich entry at (l, i) is p.
inline u64 cs_power(u64 g, u64 p, u64 k, u64 n) {
  if (k == 0) {
    throw std::invalid_argument("cs_power: exponent must be at least 1");
  }
  g %= n;
  return mul_mod(pow_mod(mul_mod(g, p % n, n), k - 1, n), g, n);
}

// Deterministically derive the sandwich entry for an index: hash
// BE64(i xor s) || BE64(counter) || 0x01 with SHA-512, take the first eight
// digest bytes big-endian mod N, and retry with the next counter until the
// candidate is a unit.
inline u64 derive_sandwich(u64 index, u64 secret, u64 modulus) {
  if (modulus < 2 || modulus > kMaxModulus) {
    throw std::invalid_argument("derive_sandwich: modulus out of range");
  }
  std::array<std::uint8_t, 17> msg{};
  u64 const seed = index ^ secret;
  for (int b = 0; b < 8; ++b) {
    msg[b] = static_cast<std::uint8_t>(seed >> (56 - 8 * b));
  }
  msg[16] = 0x01;
  for (u64 ctr = 0; ctr < 1000; ++ctr) {
    for (int b = 0; b < 8; ++b) {
      msg[8 + b] = static_cast<std::uint8_t>(ctr >> (56 - 8 * b));
    }
    auto const digest = sha512(msg.data(), msg.size());
    u64 candidate = 0;
    for (int b = 0; b < 8; ++b) {
      candidate = candidate << 8 | digest[b];
    }
    candidate %= modulus;
    if (std::gcd(candidate, modulus) == 1) {
      return candidate;
    }
  }
  throw Error("derive_sandwich: no unit found within the retry bound");
}

// Generate a key for the given modulus: the exponent is a uniform unit of
// Z_r, the secret a uniform 64-bit value.
inline SymmetricKey keygen(Modulus modulus, Rng& rng,
                           unsigned index_bits = 32) {
  bool const two_primes = modulus.factors.size() == 2 &&
                          modulus.is_squarefree();
  if (!modulus.is_prime() && !two_primes) {
    throw BadModulusError(
        "keygen: modulus must be prime or a product of two distinct primes");
  }
  if (index_bits == 0 || index_bits > 64) {
    throw std::invalid_argument("keygen: index_bits must be in [1, 64]");
  }
  SymmetricKey key;
  key.group_order = modulus.phi;
  key.modulus = std::move(modulus);
  key.encrypt_exp = key.group_order == 1 ? 1 : uniform_unit(rng, key.group_order);
  key.decrypt_exp = key.group_order == 1
                        ? 1
                        : mod_inv(static_cast<i64>(key.encrypt_exp),
                                  key.group_order);
  key.secret = rng();
  key.index_bits = index_bits;
  return key;
}

struct CiphertextBlock {
  u64 index;
  u64 body;
  bool operator==(CiphertextBlock const&) const = default;
};

inline CiphertextBlock cs_encrypt_with_index(u64 g, u64 index,
                                             SymmetricKey const& key) {
  if (key.index_bits < 64 && index >> key.index_bits != 0) {
    throw std::invalid_argument("cs_encrypt: index out of range");
  }
  u64 const n = key.modulus.value;
  u64 const p_i = derive_sandwich(index, key.secret, n);
  return {index, cs_power(g, p_i, key.encrypt_exp, n)};
}

inline CiphertextBlock cs_encrypt(u64 g, SymmetricKey const& key, Rng& rng) {
  u64 const index = key.index_bits == 64
                        ? rng()
                        : uniform_below(rng, u64{1} << key.index_bits);
  return cs_encrypt_with_index(g, index, key);
}

inline u64 cs_decrypt(CiphertextBlock const& block, SymmetricKey const& key) {
  u64 const n = key.modulus.value;
  u64 const p_i = derive_sandwich(block.index, key.secret, n);
  u64 const lifted = pow_mod(mul_mod(block.body % n, p_i, n),
                             key.decrypt_exp, n);
  return mul_mod(lifted, mod_inv(static_cast<i64>(p_i), n), n);
}

// Group mode: x -> x^e mod p.  The exponent must be invertible mod p-1 so
// that decryption exists.
inline u64 group_encrypt(u64 x, u64 e, u64 p) {
  if (p < 2 || p > kMaxModulus) {
    throw std::invalid_argument("group_encrypt: modulus out of range");
  }
  if (std::gcd(e, p - 1) != 1) {
    throw NotCoprimeError("group_encrypt: exponent shares a factor with p-1");
  }
  return pow_mod(x, e, p);
}

inline u64 group_decrypt(u64 c, u64 k, u64 p) {
  if (p < 2 || p > kMaxModulus) {
    throw std::invalid_argument("group_decrypt: modulus out of range");
  }
  return pow_mod(c, k, p);
}

// Public-key block: the masked sandwich entry and the body.
struct CrrsaBlock {
  u64 masked_sandwich;  // p_i^e mod N
  u64 body;             // (g p_i)^{e-1} g mod N
  bool operator==(CrrsaBlock const&) const = default;
};

namespace detail {
inline void check_crrsa_modulus(Modulus const& n) {
  if (n.factors.size() != 2 || !n.is_squarefree()) {
    throw BadModulusError(
        "crrsa: modulus must be a product of two distinct primes");
  }
}
}  // namespace detail

// Encrypt with an explicit sandwich mask (used by tests and derived modes).
inline CrrsaBlock crrsa_encrypt_with_mask(u64 g, u64 p_i, u64 e,
                                          Modulus const& n) {
  detail::check_crrsa_modulus(n);
  if (std::gcd(e, n.phi) != 1) {
    throw NotCoprimeError("crrsa: exponent shares a factor with phi(N)");
  }
  if (p_i == 0 || p_i >= n.value || std::gcd(p_i, n.value) != 1) {
    throw NotUnitError("crrsa: sandwich mask must be a unit");
  }
  if (e == 0) {
    throw std::invalid_argument("crrsa: exponent must be at least 1");
  }
  return {pow_mod(p_i, e, n.value), cs_power(g, p_i, e, n.value)};
}

inline CrrsaBlock crrsa_encrypt(u64 g, u64 e, Modulus const& n, Rng& rng) {
  detail::check_crrsa_modulus(n);
  return crrsa_encrypt_with_mask(g, uniform_unit(rng, n.value), e, n);
}

// Recover p_i = first^d, then g = ((body p_i)^d) p_i^{-1}.
inline u64 crrsa_decrypt(CrrsaBlock const& block, u64 d, Modulus const& n) {
  detail::check_crrsa_modulus(n);
  u64 const p_i = pow_mod(block.masked_sandwich, d, n.value);
  if (std::gcd(p_i, n.value) != 1) {
    throw NotUnitError("crrsa_decrypt: recovered mask is not a unit");
  }
  u64 const lifted = pow_mod(mul_mod(block.body % n.value, p_i, n.value), d,
                             n.value);
  return mul_mod(lifted, mod_inv(static_cast<i64>(p_i), n.value), n.value);
}

}  // namespace crs

#endif  // CRS_CIPHER_HPP_
