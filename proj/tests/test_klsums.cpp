#include <random>

#include <gtest/gtest.h>

#include "kloost/bruhat.hpp"
#include "kloost/classical.hpp"
#include "kloost/klsums.hpp"

using namespace kloost;

TEST(KlSums, PartialLongExamples) {
  ExponentMatrix m(WeylElement::LongElement, 1, {1});
  ComplexValue z = partial_kl_long(m, CharacterPair::ones(1), 3).eval_complex();
  EXPECT_NEAR(z.re, -1.0, 1e-12);
  EXPECT_TRUE(partial_kl_long(ExponentMatrix(WeylElement::LongElement, 3), CharacterPair::ones(3), 5)
                  .equals_integer(1));
}

TEST(KlSums, PartialStarCases) {
  const i64 p = 5;
  CharacterPair chars{{1, 2, 3}, {4, 1, 2}};
  auto at = [&](std::vector<std::pair<int, int>> nz) {
    ExponentMatrix m(WeylElement::Star, 3);
    for (auto [i, j] : nz) m.set(i, j, 1);
    return partial_kl_star(m, chars, p);
  };
  EXPECT_TRUE(at({{1, 3}}).equals_integer(25));
  EXPECT_TRUE(at({{1, 1}, {2, 3}}).equals_integer(5));
  EXPECT_TRUE(at({{1, 2}, {3, 3}}).is_zero());
}

TEST(KlSums, LongExamples) {
  EXPECT_TRUE(kl_long({3, {1, 1}}, CharacterPair::ones(2)).exact.equals_integer(4));
  EXPECT_TRUE(kl_long({3, {1, 1, 1}}, {{1, 2, 1}, {2, 2, 1}}).exact.equals_integer(-4));
  CycloSum v = kl_long({5, {2}}, {{1}, {2}}).exact;
  EXPECT_TRUE(v == classical_sum(2, 1, 25).to_cyclo(5));
}

TEST(KlSums, StarExamples) {
  KloostermanResult r = kl_star({5, {1, 1, 1}}, CharacterPair::ones(3));
  EXPECT_TRUE(r.exact.equals_integer(30));
  EXPECT_EQ(r.strata_breakdown.size(), 3u);
  EXPECT_FALSE(r.well_definedness_unverified);
  EXPECT_TRUE(kl_star({3, {1, 1, 1, 1}}, {{1, 2, 1, 2}, {2, 1, 1, 1}}).exact.equals_integer(36));
}

TEST(KlSums, StarEqualsLongAtRankTwo) {
  std::mt19937_64 rng(3);
  for (const std::vector<int>& r : {std::vector<int>{1, 2}, {2, 2}, {0, 3}, {3, 1}}) {
    std::uniform_int_distribution<i64> pick(0, 26);
    CharacterPair c{{pick(rng), pick(rng)}, {pick(rng), pick(rng)}};
    EXPECT_TRUE(kl_star({3, r}, c).exact == kl_long({3, r}, c).exact);
  }
}

TEST(KlSums, Admissibility) {
  CharacterPair u = CharacterPair::ones(3);
  EXPECT_EQ(star_admissible({5, {1, 2, 3}}, u), Admissibility::Admissible);
  EXPECT_EQ(star_admissible({5, {1, 1, 2}}, u), Admissibility::Inadmissible);
  EXPECT_EQ(star_admissible({5, {0, 5, 0}}, {{1, 5, 1}, {1, 1, 1}}), Admissibility::Unknown);
  EXPECT_TRUE(kl_star({3, {1, 1, 2}}, u).well_definedness_unverified);
}

TEST(KlSums, ShiftCheckExamples) {
  for (int r = 1; r <= 3; ++r)
    EXPECT_TRUE(representative_shift_check(
        WeylElement::LongElement, ExponentMatrix(WeylElement::LongElement, 1, {r}),
        {{2}, {7}}, 3, 5));
  for (const auto& m : enumerate_strata(WeylElement::LongElement, {1, 1}))
    EXPECT_TRUE(representative_shift_check(WeylElement::LongElement, m, CharacterPair::ones(2), 3, 5));
  for (const auto& m : enumerate_strata(WeylElement::Star, {1, 1, 1}))
    EXPECT_TRUE(representative_shift_check(WeylElement::Star, m, CharacterPair::ones(3), 5, 5));
}

TEST(KlSums, ShiftCheckDetectsDependence) {
  // The psi_2 term of this stratum has a denominator finer than the c22 range.
  ExponentMatrix m(WeylElement::LongElement, 2, {0, 1, 1});
  EXPECT_FALSE(representative_shift_check(WeylElement::LongElement, m, CharacterPair::ones(2), 3, 5));
}

TEST(KlSums, PreparedSumMatchesDirectEvaluation) {
  std::mt19937_64 rng(11);
  for (const ModulusSpec& spec : {ModulusSpec{3, {1, 2}}, ModulusSpec{2, {2, 1, 1}}}) {
    const int n = spec.n();
    PreparedSum prep(long_program(n), WeylElement::LongElement, spec);
    const i64 q = spec.trivial_bound();
    std::uniform_int_distribution<i64> pick(0, q - 1);
    for (int t = 0; t < 5; ++t) {
      CharacterPair c{std::vector<i64>(n), std::vector<i64>(n)};
      for (int j = 0; j < n; ++j) {
        c.psi[j] = pick(rng);
        c.psi_prime[j] = pick(rng);
      }
      EXPECT_TRUE(prep.evaluate(c) == kl_long(spec, c).exact);
    }
  }
}

TEST(KlSums, BatchGridMatchesEvaluate) {
  ModulusSpec spec{3, {1, 1, 1}};
  PreparedSum prep(star_program(3), WeylElement::Star, spec);
  CharacterGrid grid{{{0, 1, 2}, {1, 2}, {1, 5}}, {{1, 2}, {0, 4}, {2, 7}}};
  i64 visited = 0;
  prep.for_each_character(grid, [&](const std::vector<i64>& psi, const std::vector<i64>& psip,
                                    const CycloSum& v) {
    ++visited;
    EXPECT_TRUE(v == prep.evaluate({psi, psip}));
    EXPECT_TRUE(v == kl_star(spec, {psi, psip}).exact);
  });
  EXPECT_EQ(visited, grid.size());
}

TEST(KlSums, BatchGridSparsePath) {
  // Many residues and few keys select the direct path.
  ModulusSpec spec{3, {3}};
  PreparedSum prep(long_program(1), WeylElement::LongElement, spec);
  std::vector<i64> all(27);
  for (i64 x = 0; x < 27; ++x) all[x] = x;
  prep.for_each_character({{all}, {all}}, [&](const std::vector<i64>& psi,
                                              const std::vector<i64>& psip, const CycloSum& v) {
    EXPECT_TRUE(v == classical_sum(psip[0], psi[0], 27).to_cyclo(3));
  });
}

TEST(KlSums, PhasesAgreeWithTheBruhatRoute) {
  // Canonical representatives: the phase programs reproduce the character of
  // the decomposition.
  struct Case {
    WeylElement w;
    ModulusSpec spec;
  };
  for (const Case& cs : {Case{WeylElement::LongElement, {3, {1, 1}}},
                         Case{WeylElement::LongElement, {2, {1, 2}}},
                         Case{WeylElement::Star, {3, {1, 1, 1}}},
                         Case{WeylElement::LongElement, {2, {1, 1, 1}}}}) {
    const int n = cs.spec.n();
    const PhaseProgram prog = cs.w == WeylElement::LongElement ? long_program(n) : star_program(n);
    CharacterPair chars{std::vector<i64>(n), std::vector<i64>(n)};
    for (int j = 0; j < n; ++j) {
      chars.psi[j] = j + 1;
      chars.psi_prime[j] = 2 * j + 1;
    }
    for (const auto& m : enumerate_strata(cs.w, cs.spec.r)) {
      const int level = cs.spec.height();
      StratumProgram sp(prog, m, cs.spec.p, level);
      std::vector<i64> a(2 * n);
      for (const auto& pt : iterate_cosets(m, cs.spec.p, 100000)) {
        sp.coefficients(pt.values().data(), a.data());
        i64 t = 0;
        auto slots = chars.slots();
        for (int s = 0; s < 2 * n; ++s) t = mod(t + mulmod(slots[s], a[s], sp.q()), sp.q());
        Rational want = Rational(t) / Rational(sp.q());
        EXPECT_EQ(bruhat_route_phase(m, pt, chars, cs.spec.p), want) << m.to_string();
      }
    }
  }
}

TEST(KlSums, ResultJson) {
  auto j = kl_long({3, {1, 1}}, CharacterPair::ones(2)).to_json();
  EXPECT_EQ(j["term_count"], 10);
  EXPECT_EQ(j["strata"].size(), 2u);
  EXPECT_NEAR(j["complex"]["re"].get<double>(), 4.0, 1e-9);
}

TEST(KlSums, CharacterLengthIsChecked) {
  EXPECT_THROW(kl_long({3, {1, 1}}, CharacterPair::ones(3)), LengthMismatch);
  EXPECT_THROW(kl_star({3, {1}}, CharacterPair::ones(1)), InvalidArgument);
}
