#pragma once

#include "kloost/klsums.hpp"

namespace kloost {

enum class Gl4Weyl { LongGl4, StarGl4, BlockSwap, Mixed };

struct Gl4Element {
  Gl4Weyl tag;
  // Mixed only: the companion element, evaluated through the duality
  // psi_j -> -psi_{4-j}, psi'_j -> -psi'_{4-j}, r reversed, m_ij -> m_{4-j,4-i}.
  bool dual = false;
};

std::string to_string(Gl4Weyl w);
Gl4Weyl gl4_from_string(const std::string& s);

// Layout family whose strata carry this element's exponents.
WeylElement gl4_layout(Gl4Weyl w);
const PhaseProgram& gl4_program(Gl4Weyl w);

// For the dual flag the stratum is given in the reindexed coordinates, i.e.
// on the Mixed support.
CycloSum gl4_partial(const Gl4Element& w, const ExponentMatrix& m, const CharacterPair& chars,
                     i64 p, i64 budget = default_term_budget());

KloostermanResult gl4_full(const Gl4Element& w, const ModulusSpec& spec,
                           const CharacterPair& chars, i64 budget = default_term_budget());

struct Gl4BoundReport {
  double value_abs;
  i64 trivial_bound;
  // log_p |value| / (r1 + r2 + r3); -inf for a zero sum, NaN when r = 0.
  double ratio;
};

Gl4BoundReport gl4_bound_report(const Gl4Element& w, const ModulusSpec& spec,
                                const CharacterPair& chars, i64 budget = default_term_budget());

// Maps data of the companion element to the Mixed formula.
CharacterPair mixed_dual_characters(const CharacterPair& chars);

}  // namespace kloost
