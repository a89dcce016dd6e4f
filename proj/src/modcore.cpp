#include "kloost/modcore.hpp"

#include <cmath>

namespace kloost {

namespace {

using u128 = unsigned __int128;

u64 powmod_u64(u64 a, u64 e, u64 n) {
  u64 r = 1;
  a %= n;
  while (e) {
    if (e & 1) r = static_cast<u64>(static_cast<u128>(r) * a % n);
    a = static_cast<u64>(static_cast<u128>(a) * a % n);
    e >>= 1;
  }
  return r;
}

constexpr i64 kPowLimit = i64{1} << 62;

}  // namespace

// Deterministic for all 64-bit inputs with these twelve bases.
bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    u64 x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = static_cast<u64>(static_cast<u128>(x) * x % n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

i64 checked_mul(i64 a, i64 b) {
  i64 out;
  if (__builtin_mul_overflow(a, b, &out) || out > kPowLimit || out < -kPowLimit)
    throw Overflow("integer product exceeds 2^62");
  return out;
}

i64 checked_pow(i64 base, int exp) {
  if (exp < 0) throw InvalidArgument("negative exponent");
  i64 r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

i64 gcd(i64 a, i64 b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i64 inverse_mod(i64 c, i64 q) {
  if (q < 1) throw ZeroModulus("modulus must be positive");
  if (q == 1) return 0;
  i64 a = mod(c, q), b = q;
  i64 x0 = 1, x1 = 0;
  while (b) {
    i64 t = a / b;
    i64 r = a - t * b;
    a = b;
    b = r;
    i64 x2 = x0 - t * x1;
    x0 = x1;
    x1 = x2;
  }
  if (a != 1) throw NotAUnit("no inverse of " + std::to_string(c) + " mod " + std::to_string(q));
  return mod(x0, q);
}

PrimePower::PrimePower(i64 p, int k) : p_(p), k_(k) {
  if (p < 2 || !is_prime(static_cast<u64>(p))) throw NotPrime(std::to_string(p) + " is not prime");
  if (k < 0) throw InvalidArgument("negative exponent");
  value_ = checked_pow(p, k);
}

i64 FracExponent::embed(i64 p, int M) const {
  if (e > M) {
    throw LevelTooSmall("denominator p^" + std::to_string(e) + " exceeds level " +
                        std::to_string(M));
  }
  i64 q = checked_pow(p, M);
  return mulmod(t, checked_pow(p, M - e), q);
}

ResidueClass::ResidueClass(i64 value, PrimePower modulus)
    : value_(mod(value, modulus.value())), modulus_(modulus) {}

ResidueClass mod_inverse(const ResidueClass& c) {
  const PrimePower& q = c.modulus();
  if (q.k() == 0) throw ZeroModulus("inverse modulo p^0 is undefined");
  if (c.value() % q.p() == 0) throw NotAUnit(std::to_string(c.value()) + " is divisible by p");
  return {inverse_mod(c.value(), q.value()), q};
}

int p_valuation(i64 x, i64 p) {
  if (x == 0) throw ZeroInput("valuation of 0 is infinite");
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

double HalfPower::value() const { return std::pow(static_cast<double>(p), half_exp / 2.0); }

HalfPower psi_p_factor(i64 psi_j, i64 p) { return {p, p_valuation(psi_j, p)}; }

UnitRange::UnitRange(PrimePower modulus, PrimePower unit_level)
    : modulus_(modulus), unit_(unit_level.k() >= 1) {
  if (unit_level.p() != modulus.p()) throw PrimeMismatch("unit level uses a different prime");
  if (unit_level.k() > modulus.k()) throw InvalidArgument("unit level above modulus");
}

UnitRange::iterator UnitRange::begin() const {
  i64 v = 0;
  while (v < modulus_.value() && skip(v)) ++v;
  return {this, v};
}

UnitRange::iterator& UnitRange::iterator::operator++() {
  do {
    ++v_;
  } while (v_ < range_->modulus_.value() && range_->skip(v_));
  return *this;
}

i64 UnitRange::size() const {
  if (!unit_) return modulus_.value();
  return modulus_.value() / modulus_.p() * (modulus_.p() - 1);
}

}  // namespace kloost
