#include "kloost/classical.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>

namespace kloost {

RootSum::RootSum(i64 conductor) {
  if (conductor < 1) throw ZeroModulus("conductor must be positive");
  mult_.assign(conductor, 0);
}

ComplexValue RootSum::eval_complex() const {
  ComplexValue v;
  double weight = 0.0;
  i64 nnz = 0;
  const double c = static_cast<double>(conductor());
  for (i64 t = 0; t < conductor(); ++t) {
    if (mult_[t] == 0) continue;
    double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / c;
    v.re += static_cast<double>(mult_[t]) * std::cos(angle);
    v.im += static_cast<double>(mult_[t]) * std::sin(angle);
    weight += std::fabs(static_cast<double>(mult_[t]));
    ++nnz;
  }
  v.eps = weight * kRoundConstant * static_cast<double>(nnz + 2);
  return v;
}

CycloSum RootSum::to_cyclo(i64 p) const {
  int k = 0;
  i64 c = conductor();
  while (c % p == 0) {
    c /= p;
    ++k;
  }
  if (c != 1) throw PrimeMismatch("conductor is not a power of p");
  CycloSum s(p, k);
  for (i64 t = 0; t < conductor(); ++t)
    if (mult_[t] != 0) s.add_root(t, mult_[t]);
  return s;
}

ClassicalSumTable::ClassicalSumTable(i64 c) : c_(c) {
  if (c < 1) throw ZeroModulus("modulus must be positive");
  for (i64 d = 0; d < c; ++d) {
    if (gcd(d, c) != 1) continue;
    units_.push_back(d);
    inverses_.push_back(inverse_mod(d, c));
  }
  for (i64 t = 0; t < c; ++t) {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(c);
    cos_.push_back(std::cos(angle));
    sin_.push_back(std::sin(angle));
  }
}

RootSum ClassicalSumTable::evaluate(i64 m, i64 m_prime) const {
  RootSum s(c_);
  const i64 a = mod(m, c_), b = mod(m_prime, c_);
  for (size_t k = 0; k < units_.size(); ++k) {
    s.add_root(mod(mulmod(a, units_[k], c_) + mulmod(b, inverses_[k], c_), c_));
  }
  return s;
}

double ClassicalSumTable::evaluate_abs(i64 m, i64 m_prime) const {
  const i64 a = mod(m, c_), b = mod(m_prime, c_);
  double re = 0.0, im = 0.0;
  for (size_t k = 0; k < units_.size(); ++k) {
    i64 t = (a * units_[k] % c_ + b * inverses_[k] % c_) % c_;
    re += cos_[t];
    im += sin_[t];
  }
  return std::hypot(re, im);
}

RootSum classical_sum(i64 m, i64 m_prime, i64 c) { return ClassicalSumTable(c).evaluate(m, m_prime); }

i64 divisor_count(i64 c) {
  i64 tau = 0;
  for (i64 d = 1; d * d <= c; ++d) {
    if (c % d == 0) tau += (d * d == c) ? 1 : 2;
  }
  return tau;
}

double weil_bound(i64 m, i64 m_prime, i64 c) {
  if (c < 1) throw ZeroModulus("modulus must be positive");
  i64 g = gcd(gcd(m, m_prime), c);
  return static_cast<double>(divisor_count(c)) * std::sqrt(static_cast<double>(c)) *
         std::sqrt(static_cast<double>(g));
}

RootSum hyper_kloosterman(i64 a, i64 c, int rank) {
  if (rank < 2) throw InvalidArgument("rank must be at least 2");
  RootSum s(c);
  const i64 target = mod(a, c);
  std::vector<i64> x(rank - 1, 0);
  while (true) {
    i64 prod = 1 % c, partial = 0;
    for (i64 v : x) {
      prod = mulmod(prod, v, c);
      partial += v;
    }
    // Solve prod * y = a (mod c); there are g solutions when g | a.
    i64 g = gcd(prod, c);
    if (target % g == 0) {
      i64 step = c / g;
      i64 y0 = mulmod(target / g, inverse_mod(prod / g, step), step);
      for (i64 k = 0; k < g; ++k) s.add_root(mod(partial + y0 + k * step, c));
    }
    int i = rank - 2;
    for (; i >= 0; --i) {
      if (++x[i] < c) break;
      x[i] = 0;
    }
    if (i < 0) break;
  }
  return s;
}

namespace {

struct Lift {
  i64 y, z;
};

// A uniformly random solution of Y*B + Z*C = 1 (mod c).
Lift random_bezout(i64 B, i64 C, i64 c, std::mt19937_64& rng) {
  if (c == 1) return {0, 0};
  std::uniform_int_distribution<i64> pick(0, c - 1);
  const i64 g = gcd(C, c);
  const i64 step = c / g;
  auto solve = [&](i64 y) -> std::optional<Lift> {
    i64 rhs = mod(1 - mulmod(y, B, c), c);
    if (rhs % g != 0) return std::nullopt;
    i64 z0 = mulmod(rhs / g, inverse_mod(C / g, step), step);
    std::uniform_int_distribution<i64> k(0, g - 1);
    return Lift{y, mod(z0 + k(rng) * step, c)};
  };
  for (int attempt = 0; attempt < 64; ++attempt) {
    if (auto l = solve(pick(rng))) return *l;
  }
  for (i64 y = 0; y < c; ++y) {
    if (auto l = solve(y)) return *l;
  }
  throw NoBezout("no Bezout pair for (" + std::to_string(B) + ", " + std::to_string(C) + ")");
}

}  // namespace

Gl3KloostermanSet::Gl3KloostermanSet(i64 c1, i64 c2, std::uint64_t seed, i64 budget)
    : c1_(c1), c2_(c2) {
  if (c1 < 1 || c2 < 1) throw ZeroModulus("moduli must be positive");
  const i64 quads = checked_mul(checked_mul(c1, c1), checked_mul(c2, c2));
  if (quads > budget) throw BudgetExceeded(quads, budget);
  std::mt19937_64 rng(seed);
  const i64 c12 = c1 * c2;
  constexpr int kChoices = 4;

  std::vector<std::array<Lift, kChoices>> lifts2(c2 * c2);
  for (i64 B2 = 0; B2 < c2; ++B2)
    for (i64 C2 = 0; C2 < c2; ++C2)
      if (gcd(gcd(B2, C2), c2) == 1)
        for (auto& l : lifts2[B2 * c2 + C2]) l = random_bezout(B2, C2, c2, rng);

  for (i64 B1 = 0; B1 < c1; ++B1) {
    for (i64 C1 = 0; C1 < c1; ++C1) {
      if (gcd(gcd(B1, C1), c1) != 1) continue;
      std::array<Lift, kChoices> l1;
      for (auto& l : l1) l = random_bezout(B1, C1, c1, rng);
      for (i64 B2 = 0; B2 < c2; ++B2) {
        for (i64 C2 = 0; C2 < c2; ++C2) {
          if (gcd(gcd(B2, C2), c2) != 1) continue;
          if ((c1 * C2 + B1 * B2 + C1 * c2) % c12 != 0) continue;
          const auto& l2 = lifts2[B2 * c2 + C2];
          i64 x1 = mod(l1[0].y * c2 - l1[0].z * B2, c1);
          i64 x2 = mod(l2[0].y * c1 - l2[0].z * B1, c2);
          for (int k = 1; k < kChoices; ++k) {
            if (mod(l1[k].y * c2 - l1[k].z * B2, c1) != x1 ||
                mod(l2[k].y * c1 - l2[k].z * B1, c2) != x2) {
              throw Error("GL(3) phase depends on the Bezout lift");
            }
          }
          terms_.push_back({B1, x1, B2, x2});
        }
      }
    }
  }
}

RootSum Gl3KloostermanSet::evaluate(i64 m1, i64 m2, i64 n1, i64 n2) const {
  const i64 c12 = c1_ * c2_;
  RootSum s(c12);
  const i64 a1 = mod(m1, c1_), b1 = mod(n1, c1_), a2 = mod(m2, c2_), b2 = mod(n2, c2_);
  for (const Term& t : terms_) {
    i64 u = (a1 * t.b1 + b1 * t.x1) % c1_;
    i64 v = (a2 * t.b2 + b2 * t.x2) % c2_;
    s.add_root((u * c2_ + v * c1_) % c12);
  }
  return s;
}

RootSum bfg_gl3_sum(const Gl3Params& params, i64 budget) {
  return Gl3KloostermanSet(params.c1, params.c2, 7, budget)
      .evaluate(params.m1, params.m2, params.n1, params.n2);
}

}  // namespace kloost
