#pragma once

#include <utility>
#include <vector>

#include "kloost/strata.hpp"

namespace kloost {

// One summand psi * prod(c) * prod(c^-1) / p^e of a phase formula.
// Slots 0..n-1 carry psi_1..psi_n, slots n..2n-1 carry psi'_1..psi'_n.
struct PhaseTerm {
  int slot;
  std::vector<IndexPair> c;
  std::vector<IndexPair> inv;
  std::vector<std::pair<IndexPair, int>> exponent;
};

struct PhaseProgram {
  int n;
  std::vector<PhaseTerm> terms;
};

PhaseProgram long_program(int n);
PhaseProgram star_program(int n);
PhaseProgram long_gl4_program();
PhaseProgram star_gl4_program();
PhaseProgram blockswap_program();
PhaseProgram mixed_program();

// A phase program bound to one stratum. Index lookups follow the total
// convention: off-support c and c^-1 read as 1, in-support c^-1 with m = 0
// is the formal zero and removes its term, and terms with e <= 0 are
// integers and vanish mod 1.
class StratumProgram {
 public:
  StratumProgram(const PhaseProgram& prog, const ExponentMatrix& m, i64 p, int level);

  int slots() const { return slots_; }
  int level() const { return level_; }
  i64 q() const { return q_; }
  // Largest denominator exponent among surviving terms.
  int max_exponent() const { return max_e_; }
  size_t term_count() const { return terms_.size(); }

  // Per-slot coefficients mod p^level for the point c (layout order).
  void coefficients(const i64* c, i64* out) const;

 private:
  struct Term {
    int slot;
    std::vector<int> c;
    std::vector<int> inv;
    i64 scale;
  };

  int slots_;
  int level_;
  i64 p_;
  i64 q_;
  int max_e_ = 0;
  std::vector<Term> terms_;
  std::vector<int> inv_positions_;
  int width_;
};

}  // namespace kloost
