#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "kloost/classical.hpp"
#include "kloost/klsums.hpp"

using namespace kloost;

// Brute force over d with dd^-1 = 1 mod c.
std::complex<double> brute(i64 m, i64 mp, i64 c) {
  std::complex<double> s = 0;
  for (i64 d = 0; d < c; ++d) {
    if (gcd(d, c) != 1) continue;
    i64 db = c == 1 ? 0 : inverse_mod(d, c);
    s += std::polar(1.0, 2 * M_PI * static_cast<double>(mod(m * d + mp * db, c)) / c);
  }
  return s;
}

TEST(Classical, MatchesBruteForce) {
  for (i64 c : {1, 2, 9, 12, 25, 30}) {
    for (i64 m = 0; m < c; m += 1 + c / 6) {
      for (i64 mp = 0; mp < c; mp += 1 + c / 5) {
        ComplexValue z = classical_sum(m, mp, c).eval_complex();
        std::complex<double> b = brute(m, mp, c);
        EXPECT_NEAR(z.re, b.real(), 1e-9);
        EXPECT_NEAR(z.im, b.imag(), 1e-9);
      }
    }
  }
}

TEST(Classical, SmallValues) {
  EXPECT_NEAR(classical_sum(1, 1, 3).eval_complex().re, -1.0, 1e-12);
  EXPECT_TRUE(classical_sum(1, 1, 3).to_cyclo(3).equals_integer(-1));
  EXPECT_TRUE(classical_sum(0, 0, 25).to_cyclo(5).equals_integer(20));
  EXPECT_NEAR(ClassicalSumTable(9).evaluate_abs(1, 1), std::abs(brute(1, 1, 9)), 1e-9);
}

TEST(Classical, WeilBoundExamples) {
  EXPECT_NEAR(weil_bound(1, 1, 3), 2 * std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(weil_bound(0, 0, 10), 4 * 10.0, 1e-9);
  EXPECT_NEAR(weil_bound(1, 1, 4), 6.0, 1e-12);
  EXPECT_EQ(divisor_count(36), 9);
  EXPECT_EQ(divisor_count(1), 1);
}

TEST(Classical, HyperKloosterman) {
  EXPECT_TRUE(hyper_kloosterman(5, 1, 3).to_cyclo(3).equals_integer(1));
  for (i64 c : {5, 9, 8})
    for (i64 a : {1, 2, 3}) {
      ComplexValue h = hyper_kloosterman(a, c, 2).eval_complex();
      ComplexValue k = classical_sum(1, a, c).eval_complex();
      EXPECT_NEAR(h.re, k.re, 1e-9);
      EXPECT_NEAR(h.im, k.im, 1e-9);
    }
  // Units (x1, x2) mod 3 with x3 = (x1 x2)^-1.
  std::complex<double> b = 0;
  for (i64 x1 : {1, 2})
    for (i64 x2 : {1, 2}) {
      i64 x3 = inverse_mod(x1 * x2, 3);
      b += std::polar(1.0, 2 * M_PI * static_cast<double>((x1 + x2 + x3) % 3) / 3);
    }
  ComplexValue h = hyper_kloosterman(1, 3, 3).eval_complex();
  EXPECT_NEAR(h.re, b.real(), 1e-12);
  EXPECT_NEAR(h.im, b.imag(), 1e-12);
}

TEST(Classical, Gl3TrivialModulus) {
  ComplexValue z = bfg_gl3_sum({1, 1, 1, 1, 1, 1}).eval_complex();
  EXPECT_NEAR(z.re, 1.0, 1e-12);
  EXPECT_NEAR(z.im, 0.0, 1e-12);
}

TEST(Classical, Gl3AgainstLongElement) {
  // (m1, m2, n1, n2) = (psi_1, psi_2, psi'_2, psi'_1).
  for (i64 p : {2, 3, 5}) {
    for (const std::vector<int>& r : {std::vector<int>{1, 0}, std::vector<int>{1, 1}}) {
      Gl3KloostermanSet set(checked_pow(p, r[0]), checked_pow(p, r[1]));
      for (i64 a = 0; a < p; ++a) {
        CharacterPair c{{1, a}, {(a + 1) % p, 1}};
        ComplexValue want = kl_long({p, r}, c).exact.eval_complex();
        ComplexValue got = set.evaluate(c.psi[0], c.psi[1], c.psi_prime[1], c.psi_prime[0]).eval_complex();
        EXPECT_NEAR(got.re, want.re, 1e-9);
        EXPECT_NEAR(got.im, want.im, 1e-9);
      }
    }
  }
}

TEST(Classical, Gl3Budget) {
  EXPECT_THROW(Gl3KloostermanSet(49, 49, 7, 1000), BudgetExceeded);
}
