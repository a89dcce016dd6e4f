#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kloost/gl4.hpp"
#include "kloost/klsums.hpp"

namespace kloost {

// Digits kept for every floating field of a scan row.
inline constexpr int kScanDigits = 12;

double round_significant(double x, int digits = kScanDigits);

struct ScanRow {
  // "long", "star", or "gl4-<tag>" with a "-dual" suffix for the Mixed companion.
  std::string weyl;
  i64 p = 0;
  std::vector<int> r;
  std::vector<i64> psi;
  std::vector<i64> psi_prime;
  double abs_value = 0.0;
  i64 trivial_bound = 1;
  // max_j p^{v_p(psi_j)/2}, and the same for psi'.
  double psi_factor = 1.0;
  double psi_prime_factor = 1.0;
  // log_p |value| / sum r; -inf for a zero sum, NaN when sum r = 0.
  double ratio = 0.0;
  bool skipped = false;
  // Exact value, carried to JSON only.
  std::optional<CycloSum> exact;

  int height() const;
  nlohmann::json to_json() const;

  // Compares the CSV fields; NaN equals NaN.
  bool operator==(const ScanRow& o) const;
};

bool verify_trivial_bound(const KloostermanResult& result, const ModulusSpec& spec);

// All r with nonnegative entries and sum at most r_budget, sorted by sum then
// lexicographically.
std::vector<std::vector<int>> r_vectors(int n, int r_budget);

std::vector<ScanRow> delta_scan(WeylElement w, i64 p, int n, int r_budget,
                                const CharacterPair& chars, i64 budget = default_term_budget());
std::vector<ScanRow> delta_scan(const Gl4Element& w, i64 p, int r_budget,
                                const CharacterPair& chars, i64 budget = default_term_budget());

void sort_rows(std::vector<ScanRow>& rows);

void write_csv(std::ostream& os, const std::vector<ScanRow>& rows);
std::vector<ScanRow> read_csv(std::istream& is);

}  // namespace kloost
