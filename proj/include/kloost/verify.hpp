#pragma once

#include <string>
#include <vector>

#include "kloost/modcore.hpp"

namespace kloost {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  // Regression fixture of the power-saving scan; written when absent.
  std::string fixture_path;
  std::uint64_t seed = 20240601;
};

inline constexpr int kCriterionCount = 10;

CriterionResult run_criterion(int id, const VerifyOptions& opts);

// Criterion ids of a named suite: exact-evals, oracles, counts, bruhat,
// shift-invariance, weil, gl4, scan, all.
std::vector<int> suite_criteria(const std::string& suite);

std::string format_result(const CriterionResult& r);

}  // namespace kloost
