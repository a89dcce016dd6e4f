#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "kloost/bounds.hpp"
#include "kloost/classical.hpp"

using namespace kloost;

TEST(Bounds, TrivialBoundExamples) {
  ModulusSpec spec{5, {1, 1, 1}};
  EXPECT_TRUE(verify_trivial_bound(kl_star(spec, CharacterPair::ones(3)), spec));
  ModulusSpec two{3, {0, 1, 0}};
  KloostermanResult r = kl_long(two, {{1, 3, 1}, {1, 3, 1}});
  EXPECT_TRUE(verify_trivial_bound(r, two));
  ModulusSpec nine{3, {2}};
  KloostermanResult s = kl_long(nine, CharacterPair::ones(1));
  EXPECT_TRUE(s.exact == classical_sum(1, 1, 9).to_cyclo(3));
  EXPECT_TRUE(verify_trivial_bound(s, nine));
}

TEST(Bounds, RVectorsAreOrdered) {
  auto rs = r_vectors(2, 2);
  EXPECT_EQ(rs, (std::vector<std::vector<int>>{{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}}));
  EXPECT_EQ(r_vectors(3, 6).size(), 84u);
}

TEST(Bounds, ScanExamples) {
  auto rows = delta_scan(WeylElement::LongElement, 3, 2, 4, CharacterPair::ones(2));
  EXPECT_EQ(rows.size(), 15u);
  EXPECT_EQ(rows.front().r, (std::vector<int>{0, 0}));
  EXPECT_EQ(rows.front().abs_value, 1.0);
  EXPECT_TRUE(std::isnan(rows.front().ratio));
  bool found = false;
  for (const auto& row : rows) {
    if (row.r == std::vector<int>{1, 1}) {
      found = true;
      EXPECT_EQ(row.abs_value, 4.0);
      EXPECT_EQ(row.trivial_bound, 9);
    }
    if (row.height() > 0 && row.abs_value > 0) EXPECT_LT(row.ratio, 1.0);
    EXPECT_LE(row.abs_value, static_cast<double>(row.trivial_bound));
  }
  EXPECT_TRUE(found);
}

TEST(Bounds, ScanMarksBudgetRowsSkipped) {
  auto rows = delta_scan(WeylElement::LongElement, 3, 2, 3, CharacterPair::ones(2), 5);
  int skipped = 0;
  for (const auto& row : rows) skipped += row.skipped;
  EXPECT_GT(skipped, 0);
  EXPECT_FALSE(rows.front().skipped);
}

TEST(Bounds, CsvRoundTrip) {
  auto rows = delta_scan(WeylElement::Star, 3, 3, 3, {{1, 2, 1}, {2, 1, 1}});
  auto more = delta_scan(Gl4Element{Gl4Weyl::Mixed, true}, 2, 2, CharacterPair::ones(3), 5);
  rows.insert(rows.end(), more.begin(), more.end());
  std::stringstream ss;
  write_csv(ss, rows);
  auto back = read_csv(ss);
  ASSERT_EQ(back.size(), rows.size());
  for (size_t k = 0; k < rows.size(); ++k) EXPECT_TRUE(back[k] == rows[k]) << "row " << k;
}

TEST(Bounds, PsiFactors) {
  auto rows = delta_scan(WeylElement::LongElement, 3, 2, 1, {{9, 1}, {3, 0}});
  EXPECT_EQ(rows.front().psi_factor, 3.0);
  EXPECT_TRUE(std::isinf(rows.front().psi_prime_factor));
}

TEST(Bounds, RoundingKeepsTwelveDigits) {
  EXPECT_EQ(round_significant(1.0 / 3.0), 0.333333333333);
  EXPECT_TRUE(std::isinf(round_significant(-INFINITY)));
}
