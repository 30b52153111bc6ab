#ifndef CRS_MODMATH_HPP_
#define CRS_MODMATH_HPP_

// Modular arithmetic over 64-bit residues.  Intermediate products use
// unsigned __int128, so moduli up to 2^62 are safe everywhere.  All
// factor-hungry operations use trial division and are meant for desk-scale
// inputs, not cryptographic sizes.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crs/error.hpp"

namespace crs {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// Largest modulus accepted by the arithmetic layer.
inline constexpr u64 kMaxModulus = u64{1} << 62;

inline u64 mul_mod(u64 a, u64 b, u64 n) {
  return static_cast<u64>(u128{a} * b % n);
}

// Left-to-right square and multiply.  pow_mod(x, 0, n) == 1 mod n.
inline u64 pow_mod(u64 base, u64 exp, u64 n) {
  if (n == 0) {
    throw std::invalid_argument("pow_mod: modulus must be positive");
  }
  if (n == 1) {
    return 0;
  }
  base %= n;
  if (exp == 0) {
    return 1;
  }
  u64 r = 1;
  for (int b = 63 - std::countl_zero(exp); b >= 0; --b) {
    r = mul_mod(r, r, n);
    if ((exp >> b) & 1) {
      r = mul_mod(r, base, n);
    }
  }
  return r;
}

struct BezoutTriple {
  i64 g;  // gcd(a, b), always >= 1
  i64 x;  // coefficient of a
  i64 y;  // coefficient of b:  a*x + b*y == g
};

// Extended Euclid.  Accepts negative inputs; rejects (0, 0).
inline BezoutTriple ext_gcd(i64 a, i64 b) {
  if (a == 0 && b == 0) {
    throw std::invalid_argument("ext_gcd: gcd(0, 0) is undefined");
  }
  i64 old_r = a, r = b;
  i64 old_x = 1, x = 0;
  i64 old_y = 0, y = 1;
  while (r != 0) {
    i64 const q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_x = std::exchange(x, old_x - q * x);
    old_y = std::exchange(y, old_y - q * y);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_x = -old_x;
    old_y = -old_y;
  }
  return {old_r, old_x, old_y};
}

// Inverse of a modulo n, in [1, n).  Throws NotCoprimeError when
// gcd(a mod n, n) != 1 (in particular for a == 0).
inline u64 mod_inv(i64 a, u64 n) {
  if (n < 2 || n > kMaxModulus) {
    throw std::invalid_argument("mod_inv: modulus out of range");
  }
  i64 const ni = static_cast<i64>(n);
  i64 const ar = (a % ni + ni) % ni;
  BezoutTriple const t = ext_gcd(ar, ni);
  if (t.g != 1) {
    throw NotCoprimeError("mod_inv: argument " + std::to_string(ar) +
                          " is not a unit mod " + std::to_string(n));
  }
  return static_cast<u64>((t.x % ni + ni) % ni);
}

struct PrimePower {
  u64 prime;
  unsigned exp;
  bool operator==(PrimePower const&) const = default;
};

// Trial-division factorisation, primes in ascending order.
inline std::vector<PrimePower> factorize(u64 n) {
  if (n < 2 || n > kMaxModulus) {
    throw std::invalid_argument("factorize: argument out of range");
  }
  std::vector<PrimePower> out;
  auto strip = [&](u64 p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) {
      out.push_back({p, e});
    }
  };
  strip(2);
  strip(3);
  for (u64 d = 5; d * d <= n; d += 6) {
    strip(d);
    strip(d + 2);
  }
  if (n > 1) {
    out.push_back({n, 1});
  }
  return out;
}

inline u64 euler_phi(std::vector<PrimePower> const& factors) {
  u64 phi = 1;
  for (auto const& [p, e] : factors) {
    phi *= p - 1;
    for (unsigned i = 1; i < e; ++i) {
      phi *= p;
    }
  }
  return phi;
}

// A modulus together with its factorisation and totient.
struct Modulus {
  u64 value;
  std::vector<PrimePower> factors;
  u64 phi;

  static Modulus of(u64 value) {
    Modulus m;
    m.value = value;
    m.factors = factorize(value);  // validates the range
    m.phi = euler_phi(m.factors);
    return m;
  }

  bool is_prime() const { return factors.size() == 1 && factors[0].exp == 1; }

  bool is_squarefree() const {
    return std::all_of(factors.begin(), factors.end(),
                       [](PrimePower const& f) { return f.exp == 1; });
  }
};

inline u64 euler_phi(u64 n) { return Modulus::of(n).phi; }

// Multiplicative order of a in the unit group mod n.
inline u64 multiplicative_order(u64 a, u64 n) {
  if (n < 2) {
    throw std::invalid_argument("multiplicative_order: modulus too small");
  }
  a %= n;
  if (std::gcd(a, n) != 1) {
    throw NotUnitError("multiplicative_order: argument is not a unit");
  }
  u64 ord = euler_phi(n);
  if (a == 1 || ord == 1) {
    return 1;
  }
  for (auto const& [p, e] : factorize(ord)) {
    (void)e;
    while (ord % p == 0 && pow_mod(a, ord / p, n) == 1) {
      ord /= p;
    }
  }
  return ord;
}

// The set {x^2 : x a unit mod n}, sorted ascending.  Exhaustive scan, so
// intended for desk-scale n only.
inline std::vector<u64> unit_squares(Modulus const& n) {
  std::vector<u64> out;
  for (u64 x = 1; x < n.value; ++x) {
    if (std::gcd(x, n.value) == 1) {
      out.push_back(mul_mod(x, x, n.value));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace crs

#endif  // CRS_MODMATH_HPP_
