#include <cmath>

#include <gtest/gtest.h>

#include "kloost/cyclosum.hpp"
#include "kloost/klsums.hpp"

using namespace kloost;

TEST(CycloSum, RootOfUnityExamples) {
  EXPECT_TRUE(root_of_unity({0, 0}, 5, 3).equals_integer(1));
  ComplexValue z = root_of_unity({1, 1}, 2, 1).eval_complex();
  EXPECT_NEAR(z.re, -1.0, 1e-12);
  EXPECT_NEAR(z.im, 0.0, 1e-12);
  CycloSum s = root_of_unity({1, 1}, 3, 1) + root_of_unity({2, 1}, 3, 1);
  EXPECT_TRUE(s.equals_integer(-1));
  EXPECT_THROW(root_of_unity({1, 3}, 3, 2), LevelTooSmall);
}

TEST(CycloSum, FifthRoots) {
  CycloSum s(5, 1);
  for (int t = 1; t <= 4; ++t) s = s + root_of_unity({t, 1}, 5, 1);
  EXPECT_TRUE(s.equals_integer(-1));
  EXPECT_NEAR(s.eval_complex().re, -1.0, 1e-12);
}

TEST(CycloSum, ClassicalSumTermwise) {
  // S(1,1,3) = e(2/3) + e(1/3) with d = 1, 2.
  CycloSum s = root_of_unity({2, 1}, 3, 1) + root_of_unity({1, 1}, 3, 1);
  ComplexValue z = s.eval_complex();
  EXPECT_NEAR(z.re, -1.0, 1e-12);
  EXPECT_NEAR(z.im, 0.0, 1e-12);
}

TEST(CycloSum, ReduceExamples) {
  CycloSum a = CycloSum::constant(3, 1, 1) + root_of_unity({1, 1}, 3, 1) +
               root_of_unity({2, 1}, 3, 1);
  EXPECT_TRUE(a.reduce().mult().isZero());
  EXPECT_TRUE(a.is_zero());

  CycloSum single = root_of_unity({1, 2}, 5, 2);
  EXPECT_EQ(single.reduce().mult(), single.mult());

  CycloSum b(2, 1);
  b.add_root(0, 7);
  b.add_root(1, 7);
  EXPECT_TRUE(b.is_zero());
}

TEST(CycloSum, EvalComplexExamples) {
  ComplexValue zero = CycloSum(3, 2).eval_complex();
  EXPECT_EQ(zero.re, 0.0);
  EXPECT_EQ(zero.im, 0.0);
  ComplexValue i = root_of_unity({1, 2}, 2, 2).eval_complex();
  EXPECT_NEAR(i.re, 0.0, i.eps);
  EXPECT_NEAR(i.im, 1.0, i.eps);

  ModulusSpec spec{5, {1, 1, 1}};
  ComplexValue v = kl_star(spec, CharacterPair::ones(3)).exact.eval_complex();
  EXPECT_NEAR(v.re, 30.0, 1e-9);
  EXPECT_NEAR(v.im, 0.0, 1e-9);
  EXPECT_LE(std::abs(v.re - 30.0), v.eps);
}

TEST(CycloSum, LevelAlignment) {
  CycloSum a = root_of_unity({1, 1}, 3, 1);
  CycloSum b = root_of_unity({3, 2}, 3, 2);
  EXPECT_TRUE(a == b);
  EXPECT_EQ((a + b).level(), 2);
  EXPECT_THROW(a + root_of_unity({1, 1}, 5, 1), PrimeMismatch);
}

TEST(CycloSum, AdditionCommutesAndAssociates) {
  CycloSum a = root_of_unity({1, 2}, 3, 2), b = root_of_unity({2, 1}, 3, 1);
  CycloSum c = CycloSum::constant(3, 3, 4);
  EXPECT_TRUE(a + b == b + a);
  EXPECT_TRUE((a + b) + c == a + (b + c));
}

TEST(CycloSum, JsonRoundTrip) {
  CycloSum a = root_of_unity({1, 2}, 3, 2) + CycloSum::constant(3, 2, 5);
  CycloSum b = CycloSum::from_json(a.to_json());
  EXPECT_TRUE(a == b);
  EXPECT_EQ(a.to_json()["M"], 2);
}

TEST(CycloSum, DenseGuard) {
  EXPECT_THROW(dense_length(7, 9), LevelTooLarge);
  EXPECT_EQ(dense_length(7, 3), 343);
}
