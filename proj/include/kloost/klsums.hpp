#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include <nlohmann/json.hpp>

#include "kloost/cyclosum.hpp"
#include "kloost/phase.hpp"
#include "kloost/strata.hpp"

namespace kloost {

struct CharacterPair {
  std::vector<i64> psi;
  std::vector<i64> psi_prime;

  int n() const { return static_cast<int>(psi.size()); }
  // psi_1..psi_n then psi'_1..psi'_n.
  std::vector<i64> slots() const;
  static CharacterPair ones(int n);
};

struct StratumValue {
  ExponentMatrix m;
  CycloSum value;
};

struct KloostermanResult {
  CycloSum exact;
  ComplexValue complex;
  i64 term_count = 0;
  std::vector<StratumValue> strata_breakdown;
  bool well_definedness_unverified = false;

  nlohmann::json to_json() const;
};

// Sum over C_w(m) of e(phase) for an arbitrary program on m's layout.
CycloSum partial_sum(const PhaseProgram& prog, const ExponentMatrix& m,
                     const CharacterPair& chars, i64 p, i64 budget = default_term_budget());

CycloSum partial_kl_long(const ExponentMatrix& m, const CharacterPair& chars, i64 p,
                         i64 budget = default_term_budget());
CycloSum partial_kl_star(const ExponentMatrix& m, const CharacterPair& chars, i64 p,
                         i64 budget = default_term_budget());

// Sum of partial sums over all strata of the layout w for the given r.
KloostermanResult stratified_sum(const PhaseProgram& prog, WeylElement w,
                                 const ModulusSpec& spec, const CharacterPair& chars,
                                 i64 budget = default_term_budget());

KloostermanResult kl_long(const ModulusSpec& spec, const CharacterPair& chars,
                          i64 budget = default_term_budget());
KloostermanResult kl_star(const ModulusSpec& spec, const CharacterPair& chars,
                          i64 budget = default_term_budget());

enum class Admissibility { Admissible, Inadmissible, Unknown };

Admissibility star_admissible(const ModulusSpec& spec, const CharacterPair& chars);

// Re-evaluates the partial sum with every representative lifted by a random
// multiple of its modulus and compares exactly with the canonical value.
bool representative_shift_check(const PhaseProgram& prog, const ExponentMatrix& m,
                                const CharacterPair& chars, i64 p, int trials,
                                std::uint64_t seed, i64 budget = default_term_budget());
bool representative_shift_check(WeylElement w, const ExponentMatrix& m,
                                const CharacterPair& chars, i64 p, int trials,
                                std::uint64_t seed = 1, i64 budget = default_term_budget());

// Candidate values per character slot for batch evaluation.
struct CharacterGrid {
  std::vector<std::vector<i64>> psi;
  std::vector<std::vector<i64>> psi_prime;

  static CharacterGrid units_mod(i64 q, i64 p, int n);
  i64 size() const;
};

// Coefficient-vector histogram of a stratified sum. Evaluating it for a
// character costs one pass over the distinct vectors instead of all points.
class PreparedSum {
 public:
  PreparedSum(const PhaseProgram& prog, WeylElement w, const ModulusSpec& spec,
              i64 budget = default_term_budget());

  i64 p() const { return p_; }
  int level() const { return level_; }
  // Level at which all phases live (max surviving denominator exponent).
  int reduced_level() const { return reduced_; }
  i64 term_count() const { return terms_; }
  size_t distinct() const { return counts_.size(); }

  CycloSum evaluate(const CharacterPair& chars) const;

  using Visitor =
      std::function<void(const std::vector<i64>&, const std::vector<i64>&, const CycloSum&)>;
  // Values are reported at reduced_level(). Uses an exact separable transform
  // over the psi' slots when the dense table fits, otherwise direct sums.
  void for_each_character(const CharacterGrid& grid, const Visitor& visit) const;

 private:
  int n_;
  i64 p_;
  int level_;
  int reduced_ = 0;
  i64 terms_ = 0;
  std::vector<std::vector<i64>> keys_;
  std::vector<i64> counts_;
};

}  // namespace kloost
