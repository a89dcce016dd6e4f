#include "kloost/phase.hpp"

#include <algorithm>

namespace kloost {

namespace {

using Exp = std::vector<std::pair<IndexPair, int>>;

PhaseTerm term(int slot, std::vector<IndexPair> c, std::vector<IndexPair> inv, Exp e) {
  return {slot, std::move(c), std::move(inv), std::move(e)};
}

}  // namespace

PhaseProgram long_program(int n) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  PhaseProgram prog{n, {}};
  for (int j = 1; j <= n; ++j) {
    for (int i = 1; i <= j; ++i) {
      Exp e;
      for (int k = 1; k <= i; ++k) e.push_back({{k, j}, +1});
      for (int k = 1; k < i; ++k) e.push_back({{k, j - 1}, -1});
      prog.terms.push_back(term(j - 1, {{i, j - 1}}, {{i, j}}, e));
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= i; ++j) {
      Exp e;
      for (int k = 1; k <= j; ++k) e.push_back({{n + 1 - i, n + 1 - k}, +1});
      for (int k = 1; k < j; ++k) e.push_back({{n + 2 - i, n + 1 - k}, -1});
      prog.terms.push_back(
          term(n + i - 1, {{n + 1 - i, n + 1 - j}}, {{n + 2 - i, n + 1 - j}}, e));
    }
  }
  return prog;
}

PhaseProgram star_program(int n) {
  if (n < 2) throw InvalidArgument("the star element needs n >= 2");
  PhaseProgram prog{n, {}};
  auto& t = prog.terms;
  t.push_back(term(0, {}, {{1, 1}}, {{{1, 1}, 1}}));
  for (int j = 2; j <= n; ++j) {
    t.push_back(term(j - 1, {{1, j - 1}}, {{1, j}}, {{{1, j}, 1}}));
    t.push_back(term(j - 1, {{j + 1, n}}, {{j, n}},
                     {{{1, j - 1}, -1}, {{1, j}, 1}, {{j, n}, 1}}));
  }
  t.push_back(term(n, {{2, n}}, {}, {{{2, n}, 1}}));
  t.push_back(term(2 * n - 1, {{1, n}}, {{n, n}}, {{{1, n}, 1}}));
  t.push_back(term(2 * n - 1, {{1, n - 1}}, {},
                   {{{n, n}, -1}, {{1, n - 1}, 1}, {{1, n}, 1}}));
  return prog;
}

// The four GL(4) displays, typed term by term (slots: psi 0..2, psi' 3..5).
PhaseProgram long_gl4_program() {
  return {3,
          {term(0, {}, {{1, 1}}, {{{1, 1}, 1}}),
           term(1, {{1, 1}}, {{1, 2}}, {{{1, 2}, 1}}),
           term(1, {}, {{2, 2}}, {{{1, 1}, -1}, {{1, 2}, 1}, {{2, 2}, 1}}),
           term(2, {{1, 2}}, {{1, 3}}, {{{1, 3}, 1}}),
           term(2, {{2, 2}}, {{2, 3}}, {{{1, 2}, -1}, {{1, 3}, 1}, {{2, 3}, 1}}),
           term(2, {}, {{3, 3}},
                {{{1, 2}, -1}, {{2, 2}, -1}, {{1, 3}, 1}, {{2, 3}, 1}, {{3, 3}, 1}}),
           term(3, {{3, 3}}, {}, {{{3, 3}, 1}}),
           term(4, {{2, 3}}, {{3, 3}}, {{{2, 3}, 1}}),
           term(4, {{2, 2}}, {}, {{{3, 3}, -1}, {{2, 3}, 1}, {{2, 2}, 1}}),
           term(5, {{1, 3}}, {{2, 3}}, {{{1, 3}, 1}}),
           term(5, {{1, 2}}, {{2, 2}}, {{{2, 3}, -1}, {{1, 3}, 1}, {{1, 2}, 1}}),
           term(5, {{1, 1}}, {},
                {{{2, 3}, -1}, {{2, 2}, -1}, {{1, 3}, 1}, {{1, 2}, 1}, {{1, 1}, 1}})}};
}

// The printed psi_2 denominator uses m22, which is off the hook support;
// m23 is the index that matches the general star formula.
PhaseProgram star_gl4_program() {
  return {3,
          {term(0, {}, {{1, 1}}, {{{1, 1}, 1}}),
           term(1, {{1, 1}}, {{1, 2}}, {{{1, 2}, 1}}),
           term(1, {{3, 3}}, {{2, 3}}, {{{1, 1}, -1}, {{1, 2}, 1}, {{2, 3}, 1}}),
           term(2, {{1, 2}}, {{1, 3}}, {{{1, 3}, 1}}),
           term(2, {}, {{3, 3}}, {{{1, 2}, -1}, {{1, 3}, 1}, {{3, 3}, 1}}),
           term(3, {{2, 3}}, {}, {{{2, 3}, 1}}),
           term(5, {{1, 3}}, {{3, 3}}, {{{1, 3}, 1}}),
           term(5, {{1, 2}}, {}, {{{3, 3}, -1}, {{1, 3}, 1}, {{1, 2}, 1}})}};
}

PhaseProgram blockswap_program() {
  return {3,
          {term(0, {{2, 2}}, {{1, 2}}, {{{1, 2}, 1}}),
           term(0, {{2, 3}}, {{1, 3}}, {{{2, 2}, -1}, {{1, 2}, 1}, {{1, 3}, 1}}),
           term(1, {}, {{2, 2}}, {{{2, 2}, 1}}),
           term(2, {{2, 2}}, {{2, 3}}, {{{2, 3}, 1}}),
           term(2, {{1, 2}}, {{1, 3}}, {{{2, 2}, -1}, {{1, 3}, 1}, {{2, 3}, 1}}),
           term(4, {{1, 3}}, {}, {{{1, 3}, 1}})}};
}

PhaseProgram mixed_program() {
  return {3,
          {term(0, {}, {{1, 1}}, {{{1, 1}, 1}}),
           term(1, {{1, 1}}, {{1, 2}}, {{{1, 2}, 1}}),
           term(1, {}, {{2, 2}}, {{{1, 1}, -1}, {{1, 2}, 1}, {{2, 2}, 1}}),
           term(2, {{1, 2}}, {{1, 3}}, {{{1, 3}, 1}}),
           term(2, {{2, 2}}, {{2, 3}}, {{{1, 2}, -1}, {{1, 3}, 1}, {{2, 3}, 1}}),
           term(4, {{2, 3}}, {}, {{{2, 3}, 1}}),
           term(5, {{1, 1}}, {},
                {{{2, 2}, -1}, {{2, 3}, -1}, {{1, 1}, 1}, {{1, 2}, 1}, {{1, 3}, 1}}),
           term(5, {{1, 2}}, {{2, 2}}, {{{2, 3}, -1}, {{1, 2}, 1}, {{1, 3}, 1}}),
           term(5, {{1, 3}}, {{2, 3}}, {{{1, 3}, 1}})}};
}

StratumProgram::StratumProgram(const PhaseProgram& prog, const ExponentMatrix& m, i64 p,
                               int level)
    : slots_(2 * prog.n), level_(level), p_(p), q_(checked_pow(p, level)) {
  if (prog.n != m.n()) throw LengthMismatch("program rank differs from stratum rank");
  const Layout& L = m.layout();
  width_ = L.size();
  for (const PhaseTerm& t : prog.terms) {
    Term ct{t.slot, {}, {}, 0};
    bool zero = false;
    for (IndexPair ij : t.c) {
      int k = L.position(ij.i, ij.j);
      if (k >= 0) ct.c.push_back(k);
    }
    for (IndexPair ij : t.inv) {
      int k = L.position(ij.i, ij.j);
      if (k < 0) continue;
      if (m.at(k) == 0) {
        zero = true;
        break;
      }
      ct.inv.push_back(k);
    }
    if (zero) continue;
    int e = 0;
    for (auto [ij, coeff] : t.exponent) e += coeff * m(ij.i, ij.j);
    if (e <= 0) continue;
    if (e > level) {
      throw LevelTooSmall("term denominator p^" + std::to_string(e) + " above level " +
                          std::to_string(level) + " in stratum " + m.to_string());
    }
    max_e_ = std::max(max_e_, e);
    ct.scale = checked_pow(p, level - e);
    for (int k : ct.inv) inv_positions_.push_back(k);
    terms_.push_back(std::move(ct));
  }
  std::sort(inv_positions_.begin(), inv_positions_.end());
  inv_positions_.erase(std::unique(inv_positions_.begin(), inv_positions_.end()),
                       inv_positions_.end());
}

void StratumProgram::coefficients(const i64* c, i64* out) const {
  thread_local std::vector<i64> inv;
  inv.assign(width_, 0);
  for (int k : inv_positions_) inv[k] = inverse_mod(c[k], q_);
  std::fill(out, out + slots_, 0);
  for (const Term& t : terms_) {
    i64 v = t.scale % q_;
    for (int k : t.c) v = mulmod(v, c[k], q_);
    for (int k : t.inv) v = mulmod(v, inv[k], q_);
    out[t.slot] = mod(out[t.slot] + v, q_);
  }
}

}  // namespace kloost
