#ifndef CRS_TOTIENTS_HPP_
#define CRS_TOTIENTS_HPP_

// Totient-style counts controlling how many alternative decryption
// exponents a completely simple instance admits.
//
//   s(n): how many m in [1, n-1] have both m and m-1 units mod n
//         (Schemmel's totient; zero for even n since m, m-1 alternate
//         parity).  Closed form n * prod_{p | n} (1 - 2/p).
//   t(n): how many odd m in [1, n] have m and (m-1)/2 units mod n.  Closed
//         forms exist for n = 2^e m (e >= 2), and tight intervals otherwise.
//
// The brute_* functions are definition-level loops (gcd(0, n) = n, so m = 1
// never counts) and serve as oracles for the closed forms.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "crs/error.hpp"
#include "crs/modmath.hpp"

namespace crs {

// Definition-level count for s(n).
inline u64 brute_s(u64 n) {
  if (n < 2) {
    throw std::invalid_argument("brute_s: n must be at least 2");
  }
  u64 count = 0;
  for (u64 m = 1; m < n; ++m) {
    if (std::gcd(m, n) == 1 && std::gcd(m - 1, n) == 1) {
      ++count;
    }
  }
  return count;
}

// Schemmel totient from the factorisation: n * prod (1 - 2/p).  Even n give
// 0 (the p = 2 factor vanishes), matching the definition.
inline u64 schemmel_s(Modulus const& n) {
  u64 s = n.value;
  for (auto const& [p, e] : n.factors) {
    (void)e;
    s = s / p * (p - 2);
  }
  return s;
}

// Convenience overload; s(1) = 1 by convention (empty product).
inline u64 schemmel_s(u64 n) {
  if (n == 0) {
    throw std::invalid_argument("schemmel_s: n must be positive");
  }
  if (n == 1) {
    return 1;
  }
  return schemmel_s(Modulus::of(n));
}

// Definition-level count for t(n).
inline u64 brute_t(u64 n) {
  if (n < 2) {
    throw std::invalid_argument("brute_t: n must be at least 2");
  }
  u64 count = 0;
  for (u64 m = 1; m <= n; m += 2) {
    if (std::gcd(m, n) == 1 && std::gcd((m - 1) / 2, n) == 1) {
      ++count;
    }
  }
  return count;
}

// Closed-form evaluation of t(n): either an exact value or an interval
// containing it.
struct TEstimate {
  bool is_exact;
  u64 value;  // meaningful when is_exact
  u64 lo;     // inclusive bounds, lo == hi == value when exact
  u64 hi;

  static TEstimate exact(u64 v) { return {true, v, v, v}; }
  static TEstimate interval(u64 lo, u64 hi) { return {false, 0, lo, hi}; }
  bool contains(u64 v) const { return lo <= v && v <= hi; }
};

// t(n) for n = 2^e * m with m odd and k distinct primes in m:
//   e >= 2          : exactly 2^{e-2} s(m)          (t(2) = 0 as well)
//   e == 1, m prime : exactly (m-3)/2 or (m-1)/2 for m = 3, 1 mod 4
//   e == 1          : |t - (s(m)-1)/2| <= (3^k - 2^k + 1)/2
//   e == 0, k == 1  : exactly (s(n)-1)/2
//   e == 0          : |t - (s(n)-1)/2| <= (3^k - 2^{k+1} + 1)/2
// Intervals are clamped below at 0.
inline TEstimate t_closed_form(u64 n) {
  if (n < 2) {
    throw std::invalid_argument("t_closed_form: n must be at least 2");
  }
  if (n == 2) {
    return TEstimate::exact(0);
  }
  unsigned e = 0;
  u64 m = n;
  while (m % 2 == 0) {
    m /= 2;
    ++e;
  }
  if (e >= 2) {
    return TEstimate::exact((u64{1} << (e - 2)) * schemmel_s(m));
  }
  auto const factors = m > 1 ? factorize(m) : std::vector<PrimePower>{};
  unsigned const k = static_cast<unsigned>(factors.size());
  u64 const sm = schemmel_s(m);
  u64 const center = (sm - 1) / 2;  // s of an odd argument is odd
  if (e == 1) {
    if (k == 1 && factors[0].exp == 1) {
      // m prime: t(2m) = (m-3)/2 if m = 3 mod 4, (m-1)/2 if m = 1 mod 4.
      return TEstimate::exact(m % 4 == 3 ? (m - 3) / 2 : (m - 1) / 2);
    }
    u64 pow3 = 1, pow2 = 1;
    for (unsigned i = 0; i < k; ++i) {
      pow3 *= 3;
      pow2 *= 2;
    }
    u64 const radius = (pow3 - pow2 + 1) / 2;
    return TEstimate::interval(center > radius ? center - radius : 0,
                               center + radius);
  }
  // e == 0, n odd (so k >= 1).
  u64 pow3 = 1, pow2 = 2;
  for (unsigned i = 0; i < k; ++i) {
    pow3 *= 3;
    pow2 *= 2;
  }
  u64 const radius = (pow3 + 1 - pow2) / 2;  // zero when k == 1
  if (radius == 0) {
    return TEstimate::exact(center);
  }
  return TEstimate::interval(center > radius ? center - radius : 0,
                             center + radius);
}

// Sizes of the classification sets over m in (1, 2n], m = 1 mod 4:
//   d: p divides m,   e: p divides m - 1,   f = d + e (they are disjoint).
// Exact laws for odd n and odd divisors p: e == (n-p)/2p, d is (n+p)/2p or
// (n-p)/2p, and f is n/p or n/p - 1.
struct DefSetCounts {
  u64 d;
  u64 e;
  u64 f;
};

inline DefSetCounts def_set_counts(u64 n, u64 p) {
  if (n < 3 || n % 2 == 0) {
    throw std::invalid_argument("def_set_counts: n must be odd and >= 3");
  }
  if (p < 3 || p % 2 == 0) {
    throw std::invalid_argument("def_set_counts: p must be odd and >= 3");
  }
  if (n % p != 0) {
    throw NotDivisorError("def_set_counts: " + std::to_string(p) +
                          " does not divide " + std::to_string(n));
  }
  DefSetCounts out{0, 0, 0};
  for (u64 m = 5; m <= 2 * n; m += 4) {
    if (m % p == 0) {
      ++out.d;
    } else if ((m - 1) % p == 0) {
      ++out.e;
    }
  }
  out.f = out.d + out.e;
  return out;
}

// Row of the comparison table produced by the CLI: closed forms next to the
// brute-force counts.
struct TotientReport {
  u64 n;
  u64 s_value;       // closed-form s(n) (0 for even n)
  TEstimate t;       // closed-form t(n)
  u64 brute_s_count;
  u64 brute_t_count;
  bool match;        // brute counts agree with the closed forms/bounds
};

inline TotientReport totient_report(u64 n) {
  if (n < 2 || n > 1'000'000) {
    throw std::invalid_argument("totient_report: n must be in [2, 10^6]");
  }
  TotientReport r;
  r.n = n;
  r.s_value = schemmel_s(n);
  r.t = t_closed_form(n);
  r.brute_s_count = brute_s(n);
  r.brute_t_count = brute_t(n);
  r.match = r.s_value == r.brute_s_count && r.t.contains(r.brute_t_count) &&
            (!r.t.is_exact || r.t.value == r.brute_t_count);
  return r;
}

}  // namespace crs

#endif  // CRS_TOTIENTS_HPP_
