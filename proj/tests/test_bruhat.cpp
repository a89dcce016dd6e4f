#include <random>

#include <gtest/gtest.h>

#include "kloost/bruhat.hpp"

using namespace kloost;

RationalMatrix antidiagonal(int d) {
  RationalMatrix a = RationalMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) a(i, d - 1 - i) = Rational(i % 2 ? -2 : 3);
  return a;
}

std::vector<PadicParam> draw(const Layout& layout, i64 p, bool positive, std::mt19937_64& rng) {
  std::vector<PadicParam> out;
  for (int k = 0; k < layout.size(); ++k) {
    PadicParam a;
    a.m = std::uniform_int_distribution<int>(positive ? 1 : 0, 2)(rng);
    do {
      a.c = std::uniform_int_distribution<i64>(0, p * p * p - 1)(rng);
    } while (a.m > 0 && a.c % p == 0);
    out.push_back(a);
  }
  return out;
}

TEST(Bruhat, SingleFactor) {
  RationalMatrix b = b_beta<Rational>(1, {2, 1}, 1, 3);
  EXPECT_EQ(b(0, 0), Rational(1) / 2);
  EXPECT_EQ(b(1, 0), Rational(3));
  EXPECT_EQ(b(1, 1), Rational(2));
  EXPECT_TRUE(exact_equal<Rational>(b_product<Rational>({1}, {{2, 1}}, 1, 3), b));
  EXPECT_THROW(b_beta<Rational>(1, {3, 1}, 1, 3), NotAUnit);
  EXPECT_THROW(b_beta<Rational>(3, {1, 1}, 1, 3), BadIndex);
}

TEST(Bruhat, TrivialDecompositions) {
  RationalMatrix id = RationalMatrix::Identity(4, 4);
  RationalTriple t = bruhat_decompose<Rational>(id);
  EXPECT_TRUE(exact_equal<Rational>(t.L, id));
  EXPECT_TRUE(exact_equal<Rational>(t.N, id));
  EXPECT_TRUE(exact_equal<Rational>(t.R, id));

  RationalMatrix a = antidiagonal(4);
  RationalTriple u = bruhat_decompose<Rational>(a);
  EXPECT_TRUE(exact_equal<Rational>(u.L, id));
  EXPECT_TRUE(exact_equal<Rational>(u.N, a));
  EXPECT_TRUE(exact_equal<Rational>(u.R, id));
  EXPECT_EQ(u.perm, (std::vector<int>{3, 2, 1, 0}));
  EXPECT_THROW(bruhat_decompose<Rational>(RationalMatrix::Zero(2, 2)), SingularMatrix);
}

TEST(Bruhat, DecompositionMultipliesBack) {
  std::mt19937_64 rng(5);
  for (int n = 1; n <= 3; ++n) {
    const Layout& layout = Layout::of(WeylElement::LongElement, n);
    for (int d = 0; d < 20; ++d) {
      RationalMatrix g = b_product<Rational>(layout.word, draw(layout, 3, false, rng), n, 3);
      RationalTriple t = bruhat_decompose<Rational>(g);
      EXPECT_TRUE(exact_equal<Rational>(RationalMatrix(t.L * t.N * t.R), g));
      EXPECT_TRUE(is_p_integral(g, 3));
    }
  }
}

TEST(Bruhat, ClosedFormsWithPositiveExponents) {
  // With every m >= 1 the long-element formulas hold exactly, as do the
  // star-element formulas at n = 2.
  std::mt19937_64 rng(9);
  for (i64 p : {2, 3, 5}) {
    for (int n = 1; n <= 3; ++n) {
      const Layout& layout = Layout::of(WeylElement::LongElement, n);
      for (int d = 0; d < 20; ++d) {
        auto params = draw(layout, p, true, rng);
        RationalTriple got =
            bruhat_decompose<Rational>(b_product<Rational>(layout.word, params, n, p));
        RationalTriple want = closed_form_triple(WeylElement::LongElement, n, p, params);
        EXPECT_TRUE(exact_equal<Rational>(got.L, want.L));
        EXPECT_TRUE(exact_equal<Rational>(got.N, want.N));
        EXPECT_TRUE(exact_equal<Rational>(got.R, want.R));
      }
    }
    const Layout& star2 = Layout::of(WeylElement::Star, 2);
    for (int d = 0; d < 20; ++d) {
      auto params = draw(star2, p, true, rng);
      RationalTriple got = bruhat_decompose<Rational>(b_product<Rational>(star2.word, params, 2, p));
      RationalTriple want = closed_form_triple(WeylElement::Star, 2, p, params);
      EXPECT_TRUE(exact_equal<Rational>(got.L, want.L));
      EXPECT_TRUE(exact_equal<Rational>(got.N, want.N));
      EXPECT_TRUE(exact_equal<Rational>(got.R, want.R));
    }
  }
}

TEST(Bruhat, LongNAndRHoldWithZeros) {
  std::mt19937_64 rng(13);
  for (int n = 2; n <= 3; ++n) {
    const Layout& layout = Layout::of(WeylElement::LongElement, n);
    for (int d = 0; d < 40; ++d) {
      auto params = draw(layout, 3, false, rng);
      RationalTriple got = bruhat_decompose<Rational>(b_product<Rational>(layout.word, params, n, 3));
      RationalTriple want = closed_form_triple(WeylElement::LongElement, n, 3, params);
      EXPECT_TRUE(exact_equal<Rational>(got.N, want.N));
      EXPECT_TRUE(exact_equal<Rational>(got.R, want.R));
    }
  }
}

TEST(Bruhat, LongLFailsWithAZero) {
  // m11 = 0 produces an extra L13 term -p^{-m12}/c12 absent from the formula.
  const Layout& layout = Layout::of(WeylElement::LongElement, 2);
  std::vector<PadicParam> params(3);
  params[layout.position(1, 1)] = {2, 0};
  params[layout.position(1, 2)] = {1, 1};
  params[layout.position(2, 2)] = {1, 1};
  RationalTriple got = bruhat_decompose<Rational>(b_product<Rational>(layout.word, params, 2, 3));
  RationalTriple want = closed_form_triple(WeylElement::LongElement, 2, 3, params);
  EXPECT_FALSE(exact_equal<Rational>(got.L, want.L));
  EXPECT_EQ(got.L(0, 2) - want.L(0, 2), Rational(-1) / 3);
}

TEST(Bruhat, StarFirstRowCorrected) {
  // L_1j = c_jn / (c11 c_2n) p^{-m_1(j-1)} prod_{k=2}^{j-1} p^{-m_kn} for 3 <= j <= n.
  std::mt19937_64 rng(17);
  const i64 p = 3;
  for (int n = 3; n <= 4; ++n) {
    const Layout& layout = Layout::of(WeylElement::Star, n);
    for (int d = 0; d < 20; ++d) {
      auto params = draw(layout, p, true, rng);
      auto at = [&](int i, int j) { return params[layout.position(i, j)]; };
      RationalTriple got = bruhat_decompose<Rational>(b_product<Rational>(layout.word, params, n, p));
      for (int j = 3; j <= n; ++j) {
        int e = -at(1, j - 1).m;
        for (int k = 2; k <= j - 1; ++k) e -= at(k, n).m;
        Rational want = Rational(at(j, n).c) / (Rational(at(1, 1).c) * Rational(at(2, n).c)) *
                        p_power<Rational>(p, e);
        EXPECT_EQ(got.L(0, j - 1), want) << "j=" << j;
      }
    }
  }
}

TEST(Bruhat, RepresentativeParams) {
  ExponentMatrix m(WeylElement::LongElement, 1, {1});
  CosetPoint pt(&m.layout(), {2});
  auto params = coset_representative_params(m, pt);
  ASSERT_EQ(params.size(), 1u);
  EXPECT_EQ(params[0].c, 2);
  EXPECT_EQ(params[0].m, 1);
}

TEST(Bruhat, DistinctRepresentativesAreInequivalent) {
  std::mt19937_64 rng(21);
  for (const ExponentMatrix& m : {ExponentMatrix(WeylElement::LongElement, 2, {1, 1, 1}),
                                  ExponentMatrix(WeylElement::LongElement, 2, {2, 1, 0}),
                                  ExponentMatrix(WeylElement::LongElement, 2, {0, 2, 1})}) {
    auto pts = iterate_cosets(m, 3, 10000);
    std::uniform_int_distribution<size_t> pick(0, pts.size() - 1);
    for (int t = 0; t < 50; ++t) {
      size_t a = pick(rng), b = pick(rng);
      if (a == b) continue;
      EXPECT_FALSE(equivalent_representatives(representative_matrix(m, pts[a], 3),
                                              representative_matrix(m, pts[b], 3), 3));
    }
  }
}

TEST(Bruhat, IntegralUnipotentTwistIsEquivalent) {
  ExponentMatrix m(WeylElement::LongElement, 2, {1, 1, 1});
  RationalMatrix b = representative_matrix(m, iterate_cosets(m, 3, 100).front(), 3);
  RationalMatrix u = RationalMatrix::Identity(3, 3);
  u(0, 1) = Rational(2);
  u(0, 2) = Rational(-5);
  u(1, 2) = Rational(7);
  EXPECT_TRUE(equivalent_representatives(b, RationalMatrix(b * u), 3));
  u(1, 2) = Rational(1) / 3;
  EXPECT_FALSE(equivalent_representatives(b, RationalMatrix(b * u), 3));
}

TEST(Bruhat, RationalText) { EXPECT_EQ(to_string(Rational(-3) / 9), "-1/3"); }
