#pragma once

#include <cstdint>
#include <iterator>

#include "kloost/errors.hpp"

namespace kloost {

using i64 = std::int64_t;
using u64 = std::uint64_t;

bool is_prime(u64 n);

// Returns base^exp or throws Overflow past 2^62.
i64 checked_pow(i64 base, int exp);
i64 checked_mul(i64 a, i64 b);

// Floor modulus, result in [0, q).
inline i64 mod(i64 a, i64 q) {
  i64 r = a % q;
  return r < 0 ? r + q : r;
}

inline i64 mulmod(i64 a, i64 b, i64 q) {
  return static_cast<i64>(static_cast<unsigned __int128>(mod(a, q)) *
                          static_cast<u64>(mod(b, q)) % static_cast<u64>(q));
}

i64 gcd(i64 a, i64 b);

// Inverse of c modulo any q >= 1 with gcd(c, q) = 1; 0 when q = 1.
i64 inverse_mod(i64 c, i64 q);

class PrimePower {
 public:
  PrimePower(i64 p, int k);

  i64 p() const { return p_; }
  int k() const { return k_; }
  i64 value() const { return value_; }

  bool operator==(const PrimePower&) const = default;

 private:
  i64 p_;
  int k_;
  i64 value_;
};

// The rational t / p^e taken modulo 1.
struct FracExponent {
  i64 t = 0;
  int e = 0;

  // t * p^(M - e) mod p^M; throws LevelTooSmall when e > M.
  i64 embed(i64 p, int M) const;
};

class ResidueClass {
 public:
  ResidueClass(i64 value, PrimePower modulus);

  i64 value() const { return value_; }
  const PrimePower& modulus() const { return modulus_; }

  bool operator==(const ResidueClass&) const = default;

 private:
  i64 value_;
  PrimePower modulus_;
};

ResidueClass mod_inverse(const ResidueClass& c);

int p_valuation(i64 x, i64 p);

// p^(half_exp / 2).
struct HalfPower {
  i64 p;
  int half_exp;
  double value() const;
};

HalfPower psi_p_factor(i64 psi_j, i64 p);

// Residues 0 <= c < modulus with gcd(c, p^unit_level.k) = 1.
class UnitRange {
 public:
  UnitRange(PrimePower modulus, PrimePower unit_level);

  class iterator {
   public:
    using iterator_category = std::forward_iterator_tag;
    using value_type = ResidueClass;
    using difference_type = std::ptrdiff_t;
    using pointer = void;
    using reference = ResidueClass;

    iterator() = default;
    iterator(const UnitRange* range, i64 v) : range_(range), v_(v) {}

    ResidueClass operator*() const { return {v_, range_->modulus_}; }
    iterator& operator++();
    iterator operator++(int) {
      iterator old = *this;
      ++*this;
      return old;
    }
    bool operator==(const iterator& o) const { return v_ == o.v_; }

   private:
    const UnitRange* range_ = nullptr;
    i64 v_ = 0;
  };

  iterator begin() const;
  iterator end() const { return {this, modulus_.value()}; }
  i64 size() const;

 private:
  bool skip(i64 v) const { return unit_ && v % modulus_.p() == 0; }

  PrimePower modulus_;
  bool unit_;
};

}  // namespace kloost
