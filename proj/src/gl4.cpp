#include "kloost/gl4.hpp"

#include <cmath>
#include <limits>

namespace kloost {

std::string to_string(Gl4Weyl w) {
  switch (w) {
    case Gl4Weyl::LongGl4: return "long";
    case Gl4Weyl::StarGl4: return "star";
    case Gl4Weyl::BlockSwap: return "blockswap";
    case Gl4Weyl::Mixed: return "mixed";
  }
  return "?";
}

Gl4Weyl gl4_from_string(const std::string& s) {
  if (s == "long") return Gl4Weyl::LongGl4;
  if (s == "star") return Gl4Weyl::StarGl4;
  if (s == "blockswap") return Gl4Weyl::BlockSwap;
  if (s == "mixed") return Gl4Weyl::Mixed;
  throw InvalidArgument("unknown GL(4) Weyl element '" + s + "'");
}

WeylElement gl4_layout(Gl4Weyl w) {
  switch (w) {
    case Gl4Weyl::LongGl4: return WeylElement::LongElement;
    case Gl4Weyl::StarGl4: return WeylElement::Star;
    case Gl4Weyl::BlockSwap: return WeylElement::Gl4BlockSwap;
    case Gl4Weyl::Mixed: return WeylElement::Gl4Mixed;
  }
  throw InvalidArgument("unknown GL(4) Weyl element");
}

const PhaseProgram& gl4_program(Gl4Weyl w) {
  static const PhaseProgram lg = long_gl4_program();
  static const PhaseProgram st = star_gl4_program();
  static const PhaseProgram bs = blockswap_program();
  static const PhaseProgram mx = mixed_program();
  switch (w) {
    case Gl4Weyl::LongGl4: return lg;
    case Gl4Weyl::StarGl4: return st;
    case Gl4Weyl::BlockSwap: return bs;
    case Gl4Weyl::Mixed: return mx;
  }
  throw InvalidArgument("unknown GL(4) Weyl element");
}

CharacterPair mixed_dual_characters(const CharacterPair& chars) {
  if (chars.n() != 3 || chars.psi_prime.size() != 3) throw LengthMismatch("GL(4) needs n = 3");
  CharacterPair out{std::vector<i64>(3), std::vector<i64>(3)};
  for (int j = 0; j < 3; ++j) {
    out.psi[j] = -chars.psi[2 - j];
    out.psi_prime[j] = -chars.psi_prime[2 - j];
  }
  return out;
}

namespace {

void require_dual_ok(const Gl4Element& w) {
  if (w.dual && w.tag != Gl4Weyl::Mixed) throw InvalidArgument("only the Mixed element has a dual");
}

}  // namespace

CycloSum gl4_partial(const Gl4Element& w, const ExponentMatrix& m, const CharacterPair& chars,
                     i64 p, i64 budget) {
  require_dual_ok(w);
  if (m.weyl() != gl4_layout(w.tag) || m.n() != 3)
    throw InvalidArgument("stratum support does not match the GL(4) element");
  const CharacterPair c = w.dual ? mixed_dual_characters(chars) : chars;
  return partial_sum(gl4_program(w.tag), m, c, p, budget);
}

KloostermanResult gl4_full(const Gl4Element& w, const ModulusSpec& spec,
                           const CharacterPair& chars, i64 budget) {
  require_dual_ok(w);
  if (spec.n() != 3) throw InvalidArgument("GL(4) needs r of length 3");
  if (!w.dual) return stratified_sum(gl4_program(w.tag), gl4_layout(w.tag), spec, chars, budget);
  ModulusSpec rev{spec.p, {spec.r[2], spec.r[1], spec.r[0]}};
  return stratified_sum(gl4_program(w.tag), gl4_layout(w.tag), rev, mixed_dual_characters(chars),
                        budget);
}

Gl4BoundReport gl4_bound_report(const Gl4Element& w, const ModulusSpec& spec,
                                const CharacterPair& chars, i64 budget) {
  KloostermanResult res = gl4_full(w, spec, chars, budget);
  Gl4BoundReport rep{0.0, spec.trivial_bound(), 0.0};
  const bool zero = res.exact.is_zero();
  rep.value_abs = zero ? 0.0 : res.complex.abs();
  const int h = spec.height();
  if (zero) {
    rep.ratio = -std::numeric_limits<double>::infinity();
  } else if (h == 0) {
    rep.ratio = std::numeric_limits<double>::quiet_NaN();
  } else {
    rep.ratio = std::log(rep.value_abs) / std::log(static_cast<double>(spec.p)) / h;
  }
  return rep;
}

}  // namespace kloost
