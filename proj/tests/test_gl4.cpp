#include <cmath>

#include <gtest/gtest.h>

#include "kloost/gl4.hpp"

using namespace kloost;

TEST(Gl4, PartialExamples) {
  EXPECT_TRUE(gl4_partial({Gl4Weyl::BlockSwap}, ExponentMatrix(WeylElement::Gl4BlockSwap, 3),
                          CharacterPair::ones(3), 5)
                  .equals_integer(1));
  ExponentMatrix m(WeylElement::Star, 3);
  m.set(1, 3, 1);
  EXPECT_TRUE(gl4_partial({Gl4Weyl::StarGl4}, m, CharacterPair::ones(3), 5).equals_integer(25));
  EXPECT_THROW(gl4_partial({Gl4Weyl::Mixed}, m, CharacterPair::ones(3), 5), InvalidArgument);
}

TEST(Gl4, FullExamples) {
  CharacterPair u = CharacterPair::ones(3);
  EXPECT_TRUE(gl4_full({Gl4Weyl::LongGl4}, {3, {1, 1, 1}}, u).exact.equals_integer(-4));
  EXPECT_TRUE(gl4_full({Gl4Weyl::StarGl4}, {5, {1, 1, 1}}, u).exact.equals_integer(30));
  EXPECT_TRUE(gl4_full({Gl4Weyl::BlockSwap}, {3, {0, 0, 0}}, u).exact.equals_integer(1));
  EXPECT_THROW(gl4_full({Gl4Weyl::BlockSwap, true}, {3, {1, 1, 1}}, u), InvalidArgument);
  EXPECT_THROW(gl4_full({Gl4Weyl::LongGl4}, {3, {1, 1}}, CharacterPair::ones(2)), InvalidArgument);
}

TEST(Gl4, HandTypedFormulasMatchTheGeneralOnes) {
  for (const std::vector<int>& r : {std::vector<int>{1, 2, 1}, {2, 0, 1}, {1, 1, 2}}) {
    CharacterPair c{{1, 2, 4}, {3, 1, 5}};
    ModulusSpec spec{3, r};
    EXPECT_TRUE(gl4_full({Gl4Weyl::LongGl4}, spec, c).exact == kl_long(spec, c).exact);
    EXPECT_TRUE(gl4_full({Gl4Weyl::StarGl4}, spec, c).exact == kl_star(spec, c).exact);
  }
}

TEST(Gl4, BoundReportExamples) {
  CharacterPair u = CharacterPair::ones(3);
  Gl4BoundReport a = gl4_bound_report({Gl4Weyl::LongGl4}, {3, {1, 1, 1}}, u);
  EXPECT_NEAR(a.value_abs, 4.0, 1e-9);
  EXPECT_EQ(a.trivial_bound, 27);
  EXPECT_NEAR(a.ratio, std::log(4.0) / std::log(3.0) / 3, 1e-9);
  EXPECT_NEAR(a.ratio, 0.4206, 1e-4);

  Gl4BoundReport b = gl4_bound_report({Gl4Weyl::StarGl4}, {5, {1, 1, 1}}, u);
  EXPECT_NEAR(b.value_abs, 30.0, 1e-9);
  EXPECT_EQ(b.trivial_bound, 125);

  Gl4BoundReport zero = gl4_bound_report({Gl4Weyl::LongGl4}, {3, {0, 1, 0}}, {{1, 3, 1}, {1, 3, 1}});
  if (zero.value_abs == 0.0) EXPECT_TRUE(std::isinf(zero.ratio) && zero.ratio < 0);
  Gl4BoundReport empty = gl4_bound_report({Gl4Weyl::Mixed}, {3, {0, 0, 0}}, u);
  EXPECT_TRUE(std::isnan(empty.ratio));
}

TEST(Gl4, BlockSwapAndMixedCountsAndBounds) {
  for (i64 p : {2, 3}) {
    for (const std::vector<int>& r : {std::vector<int>{1, 1, 1}, {2, 1, 1}, {1, 2, 1}}) {
      ModulusSpec spec{p, r};
      for (WeylElement w : {WeylElement::Gl4BlockSwap, WeylElement::Gl4Mixed})
        for (const auto& m : enumerate_strata(w, r)) EXPECT_EQ(coset_cardinality(m, p), dr_count(m, r, p));
      for (Gl4Element w : {Gl4Element{Gl4Weyl::BlockSwap}, Gl4Element{Gl4Weyl::Mixed},
                           Gl4Element{Gl4Weyl::Mixed, true}})
        EXPECT_LE(gl4_bound_report(w, spec, CharacterPair::ones(3)).value_abs,
                  static_cast<double>(spec.trivial_bound()) + 1e-9);
    }
  }
}

TEST(Gl4, DualReversesData) {
  CharacterPair c{{1, 2, 3}, {4, 5, 6}};
  CharacterPair d = mixed_dual_characters(c);
  EXPECT_EQ(d.psi, (std::vector<i64>{-3, -2, -1}));
  EXPECT_EQ(d.psi_prime, (std::vector<i64>{-6, -5, -4}));
  ModulusSpec spec{3, {1, 2, 1}};
  EXPECT_TRUE(gl4_full({Gl4Weyl::Mixed, true}, spec, c).exact ==
              gl4_full({Gl4Weyl::Mixed}, spec, d).exact);
}

TEST(Gl4, Names) {
  for (Gl4Weyl w : {Gl4Weyl::LongGl4, Gl4Weyl::StarGl4, Gl4Weyl::BlockSwap, Gl4Weyl::Mixed})
    EXPECT_EQ(gl4_from_string(to_string(w)), w);
}
