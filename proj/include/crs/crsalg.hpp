#ifndef CRS_CRSALG_HPP_
#define CRS_CRSALG_HPP_

// Structure theory used by the cipher.
//
// For squarefree n, Z_n under multiplication is a semilattice of groups:
// indexing subsets S of the prime set {p_1, ..., p_m} of n, the component
//   U_S = { (n/n_S) * x mod n : x a unit mod n_S },   n_S = prod_{i in S} p_i,
// is a group isomorphic to the units mod n_S, the components partition Z_n,
// and multiplication descends along structure maps x -> e_T * x where e_T is
// the identity of U_T.  Separately, a Rees matrix semigroup over the unit
// group mod n with sandwich matrix P multiplies triples (i, g, l)(j, h, k) =
// (i, g * P(l, j) * h, k); powers collapse to a single exponentiation.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "crs/error.hpp"
#include "crs/modmath.hpp"

namespace crs {

// Subsets of the prime index set are bitmasks (bit i = prime factors[i]).
using ComponentMask = std::uint32_t;

class SemilatticeDecomposition {
 public:
  // Components are materialised as explicit element lists only up to this
  // modulus; classification and structure maps work at any size.
  static constexpr u64 kMaterializeLimit = 1'000'000;

  explicit SemilatticeDecomposition(Modulus modulus)
      : modulus_(std::move(modulus)) {
    if (!modulus_.is_squarefree()) {
      throw NotSquarefreeError(
          "decompose: modulus " + std::to_string(modulus_.value) +
          " is not squarefree, Z_n is not a union of groups");
    }
    if (modulus_.factors.size() > 20) {
      throw std::invalid_argument("decompose: more than 20 prime factors");
    }
    if (modulus_.value <= kMaterializeLimit) {
      components_.resize(std::size_t{1} << prime_count());
      for (u64 k = 0; k < modulus_.value; ++k) {
        components_[component_of(k)].push_back(k);
      }
    }
  }

  Modulus const& modulus() const { return modulus_; }
  unsigned prime_count() const {
    return static_cast<unsigned>(modulus_.factors.size());
  }
  u64 prime(unsigned i) const { return modulus_.factors.at(i).prime; }
  ComponentMask full_mask() const {
    return static_cast<ComponentMask>((std::uint64_t{1} << prime_count()) - 1);
  }

  // Component label of k: the set of prime indices NOT dividing k, so that
  // k = (n/n_S) * unit with the unit taken mod n_S.  component_of(0) is the
  // empty set (the component {0}).
  ComponentMask component_of(u64 k) const {
    k %= modulus_.value;
    if (k == 0) {
      return 0;
    }
    ComponentMask mask = 0;
    for (unsigned i = 0; i < prime_count(); ++i) {
      if (k % prime(i) != 0) {
        mask |= ComponentMask{1} << i;
      }
    }
    return mask;
  }

  // prod_{i in mask} p_i.
  u64 component_modulus(ComponentMask mask) const {
    check_mask(mask);
    u64 n_s = 1;
    for (unsigned i = 0; i < prime_count(); ++i) {
      if (mask >> i & 1) {
        n_s *= prime(i);
      }
    }
    return n_s;
  }

  // |U_S| = phi(n_S); the empty component {0} has size 1.
  u64 component_size(ComponentMask mask) const {
    check_mask(mask);
    u64 size = 1;
    for (unsigned i = 0; i < prime_count(); ++i) {
      if (mask >> i & 1) {
        size *= prime(i) - 1;
      }
    }
    return size;
  }

  // Identity of the component group U_S, namely the embedding of 1:
  //   e_S = (n/n_S) * ((n/n_S)^{-1} mod n_S) mod n.
  // The empty component is the null group {0}, whose identity is 0.
  u64 idempotent_of(ComponentMask mask) const {
    check_mask(mask);
    if (mask == 0) {
      return 0;
    }
    u64 const n_s = component_modulus(mask);
    u64 const n_rest = modulus_.value / n_s;  // coprime to n_s
    return mul_mod(n_rest, mod_inv(static_cast<i64>(n_rest % n_s), n_s),
                   modulus_.value);
  }

  // Structure map U_S -> U_T for T a subset of S: multiply by e_T.  This is
  // the homomorphism making Z_n a strong semilattice of groups.
  u64 structure_map(u64 x, ComponentMask from, ComponentMask to) const {
    check_mask(from);
    check_mask(to);
    if (component_of(x) != from) {
      throw NotInComponentError("structure_map: element " + std::to_string(x) +
                                " is not in the stated component");
    }
    if ((to & ~from) != 0) {
      throw NotSubsetError("structure_map: target index is not below source");
    }
    if (to == 0) {
      return 0;
    }
    return mul_mod(idempotent_of(to), x % modulus_.value, modulus_.value);
  }

  bool materialized() const { return !components_.empty(); }

  // Element list of a component (ascending).  Only for materialised sizes.
  std::vector<u64> const& component(ComponentMask mask) const {
    check_mask(mask);
    if (!materialized()) {
      throw std::invalid_argument(
          "component: modulus too large, components not materialised");
    }
    return components_[mask];
  }

 private:
  void check_mask(ComponentMask mask) const {
    if (mask > full_mask()) {
      throw std::invalid_argument("component mask out of range");
    }
  }

  Modulus modulus_;
  std::vector<std::vector<u64>> components_;
};

inline SemilatticeDecomposition decompose(Modulus modulus) {
  return SemilatticeDecomposition(std::move(modulus));
}

// One element of a Rees matrix semigroup: row index, group entry, column
// index.  Indices are zero-based.
struct ReesElement {
  std::uint32_t i;
  u64 g;
  std::uint32_t lambda;
  bool operator==(ReesElement const&) const = default;
};

// M[G; I, L; P] where G is Z_n restricted as the caller pleases (the cipher
// uses units; squarefree n admits all of Z_n) and the sandwich matrix P has
// unit entries.
class ReesMatrixSemigroup {
 public:
  ReesMatrixSemigroup(Modulus group_modulus, std::uint32_t i_count,
                      std::uint32_t lambda_count, std::vector<u64> sandwich)
      : group_modulus_(std::move(group_modulus)),
        i_count_(i_count),
        lambda_count_(lambda_count),
        sandwich_(std::move(sandwich)) {
    if (i_count_ == 0 || lambda_count_ == 0) {
      throw std::invalid_argument("rees: index sets must be nonempty");
    }
    if (sandwich_.size() != std::size_t{i_count_} * lambda_count_) {
      throw std::invalid_argument("rees: sandwich matrix has the wrong shape");
    }
    for (u64 const p : sandwich_) {
      if (p >= group_modulus_.value ||
          std::gcd(p, group_modulus_.value) != 1) {
        throw NotUnitError("rees: sandwich entries must be units");
      }
    }
  }

  Modulus const& group_modulus() const { return group_modulus_; }
  std::uint32_t i_count() const { return i_count_; }
  std::uint32_t lambda_count() const { return lambda_count_; }

  // P(lambda, i), row-major with lambda as the row.
  u64 sandwich(std::uint32_t lambda, std::uint32_t i) const {
    if (lambda >= lambda_count_ || i >= i_count_) {
      throw std::invalid_argument("rees: sandwich index out of range");
    }
    return sandwich_[std::size_t{lambda} * i_count_ + i];
  }

  void check_element(ReesElement const& a) const {
    if (a.i >= i_count_ || a.lambda >= lambda_count_ ||
        a.g >= group_modulus_.value) {
      throw std::invalid_argument("rees: element out of range");
    }
  }

 private:
  Modulus group_modulus_;
  std::uint32_t i_count_;
  std::uint32_t lambda_count_;
  std::vector<u64> sandwich_;
};

// (i, g, l) * (j, h, k) = (i, g P(l, j) h, k).
inline ReesElement rees_multiply(ReesElement const& a, ReesElement const& b,
                                 ReesMatrixSemigroup const& s) {
  s.check_element(a);
  s.check_element(b);
  u64 const n = s.group_modulus().value;
  u64 const g = mul_mod(mul_mod(a.g, s.sandwich(a.lambda, b.i), n), b.g, n);
  return {a.i, g, b.lambda};
}

// (i, g, l)^k = (i, (g P(l, i))^{k-1} g, l) for k >= 1.
inline ReesElement rees_power(ReesElement const& a, u64 k,
                              ReesMatrixSemigroup const& s) {
  s.check_element(a);
  if (k == 0) {
    throw std::invalid_argument("rees_power: exponent must be at least 1");
  }
  u64 const n = s.group_modulus().value;
  u64 const x = mul_mod(a.g, s.sandwich(a.lambda, a.i), n);
  return {a.i, mul_mod(pow_mod(x, k - 1, n), a.g, n), a.lambda};
}

// Smallest t >= 1 with a^{t+1} = a: the period of the monogenic subsemigroup
// generated by a, which is the multiplicative order of g P(l, i) in the unit
// group of the part of n on which g is invertible.
inline u64 monogenic_period(ReesElement const& a,
                            ReesMatrixSemigroup const& s) {
  s.check_element(a);
  u64 const n = s.group_modulus().value;
  // Split n = n0 * n1 with g = 0 mod n0 and g a unit mod n1.  Elements whose
  // entry has a partial prime power (possible only for non-squarefree n and
  // non-unit g) generate an infinite-tail monogenic semigroup.
  u64 n1 = n;
  for (auto const& [p, e] : s.group_modulus().factors) {
    if (a.g % p == 0) {
      u64 pe = p;
      for (unsigned j = 1; j < e; ++j) {
        pe *= p;
      }
      if (a.g % pe != 0) {
        throw std::domain_error(
            "monogenic_period: element is not completely regular");
      }
      n1 /= pe;
    }
  }
  if (n1 == 1) {
    return 1;  // g == 0 mod n; the element is idempotent
  }
  u64 const x = mul_mod(a.g % n1, s.sandwich(a.lambda, a.i) % n1, n1);
  return multiplicative_order(x, n1);
}

}  // namespace crs

#endif  // CRS_CRSALG_HPP_
