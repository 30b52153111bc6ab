#ifndef CRS_RNG_HPP_
#define CRS_RNG_HPP_

#include <bit>
#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>

namespace crs {

// All randomised operations take a caller-supplied engine so that a fixed
// seed reproduces byte-identical outputs.
using Rng = std::mt19937_64;

// Uniform draw from [0, bound).  std::uniform_int_distribution is
// implementation-defined, so we do masked rejection on raw engine output;
// the resulting stream depends only on the engine state.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("uniform_below: bound must be positive");
  }
  if (bound == 1) {
    return 0;
  }
  std::uint64_t const mask =
      ~std::uint64_t{0} >> std::countl_zero(bound - 1);
  for (;;) {
    std::uint64_t const v = rng() & mask;
    if (v < bound) {
      return v;
    }
  }
}

// Uniform unit of Z_n, i.e. a uniform draw from {v in [1, n) : gcd(v, n)=1}.
inline std::uint64_t uniform_unit(Rng& rng, std::uint64_t n) {
  if (n < 2) {
    throw std::invalid_argument("uniform_unit: modulus must be at least 2");
  }
  for (;;) {
    std::uint64_t const v = 1 + uniform_below(rng, n - 1);
    if (std::gcd(v, n) == 1) {
      return v;
    }
  }
}

}  // namespace crs

#endif  // CRS_RNG_HPP_
