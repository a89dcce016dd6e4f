#include "kloost/klsums.hpp"

#include <cmath>
#include <random>

namespace kloost {

std::vector<i64> CharacterPair::slots() const {
  if (psi.size() != psi_prime.size()) throw LengthMismatch("psi and psi' lengths differ");
  std::vector<i64> s(psi);
  s.insert(s.end(), psi_prime.begin(), psi_prime.end());
  return s;
}

CharacterPair CharacterPair::ones(int n) { return {std::vector<i64>(n, 1), std::vector<i64>(n, 1)}; }

nlohmann::json KloostermanResult::to_json() const {
  nlohmann::json strata = nlohmann::json::array();
  for (const auto& sv : strata_breakdown) {
    ComplexValue c = sv.value.eval_complex();
    strata.push_back({{"m", sv.m.to_json()},
                      {"value", sv.value.to_json()},
                      {"complex", {{"re", c.re}, {"im", c.im}}}});
  }
  nlohmann::json flags = nlohmann::json::array();
  if (well_definedness_unverified) flags.push_back("WellDefinednessUnverified");
  return {{"exact", exact.to_json()},
          {"complex", {{"re", complex.re}, {"im", complex.im}, {"eps", complex.eps}}},
          {"abs", complex.abs()},
          {"term_count", term_count},
          {"strata", strata},
          {"flags", flags}};
}

namespace {

int stratum_level(const ExponentMatrix& m) {
  int h = 0;
  for (int x : m.row_sums()) h += x;
  return h;
}

void check_chars(const PhaseProgram& prog, const CharacterPair& chars) {
  if (chars.n() != prog.n || static_cast<int>(chars.psi_prime.size()) != prog.n)
    throw LengthMismatch("character length differs from n");
}

}  // namespace

CycloSum partial_sum(const PhaseProgram& prog, const ExponentMatrix& m,
                     const CharacterPair& chars, i64 p, i64 budget) {
  check_chars(prog, chars);
  const int level = stratum_level(m);
  CycloSum out(p, level);
  StratumProgram sp(prog, m, p, level);
  CosetSpace space(m, p);
  const i64 q = sp.q();
  std::vector<i64> psi = chars.slots();
  for (i64& v : psi) v = mod(v, q);
  std::vector<i64> a(sp.slots());
  space.for_each(
      [&](const i64* c) {
        sp.coefficients(c, a.data());
        i64 idx = 0;
        for (int s = 0; s < sp.slots(); ++s) idx = mod(idx + mulmod(psi[s], a[s], q), q);
        out.add_root(idx);
      },
      budget);
  return out;
}

CycloSum partial_kl_long(const ExponentMatrix& m, const CharacterPair& chars, i64 p,
                         i64 budget) {
  if (m.weyl() != WeylElement::LongElement) throw InvalidArgument("expected a long-element stratum");
  return partial_sum(long_program(m.n()), m, chars, p, budget);
}

CycloSum partial_kl_star(const ExponentMatrix& m, const CharacterPair& chars, i64 p,
                         i64 budget) {
  if (m.weyl() != WeylElement::Star) throw InvalidArgument("expected a star stratum");
  return partial_sum(star_program(m.n()), m, chars, p, budget);
}

KloostermanResult stratified_sum(const PhaseProgram& prog, WeylElement w,
                                 const ModulusSpec& spec, const CharacterPair& chars,
                                 i64 budget) {
  check_chars(prog, chars);
  CycloSum total(spec.p, spec.height());
  KloostermanResult res{total, {}, 0, {}, false};
  for (const ExponentMatrix& m : enumerate_strata(w, spec.r)) {
    CycloSum v = partial_sum(prog, m, chars, spec.p, budget);
    total = total + v;
    res.strata_breakdown.push_back({m, v});
  }
  res.exact = total;
  res.complex = total.eval_complex();
  res.term_count = total.term_count();
  return res;
}

KloostermanResult kl_long(const ModulusSpec& spec, const CharacterPair& chars, i64 budget) {
  return stratified_sum(long_program(spec.n()), WeylElement::LongElement, spec, chars, budget);
}

KloostermanResult kl_star(const ModulusSpec& spec, const CharacterPair& chars, i64 budget) {
  KloostermanResult res =
      stratified_sum(star_program(spec.n()), WeylElement::Star, spec, chars, budget);
  res.well_definedness_unverified = star_admissible(spec, chars) != Admissibility::Admissible;
  return res;
}

Admissibility star_admissible(const ModulusSpec& spec, const CharacterPair& chars) {
  const int n = spec.n();
  if (n <= 2) return Admissibility::Admissible;
  for (const auto* v : {&chars.psi, &chars.psi_prime})
    for (i64 x : *v)
      if (mod(x, spec.p) == 0) return Admissibility::Unknown;
  for (int k = 1; k + 1 < n; ++k) {
    if (spec.r[k + 1] - spec.r[k] != spec.r[1] - spec.r[0]) return Admissibility::Inadmissible;
  }
  return Admissibility::Admissible;
}

bool representative_shift_check(const PhaseProgram& prog, const ExponentMatrix& m,
                                const CharacterPair& chars, i64 p, int trials,
                                std::uint64_t seed, i64 budget) {
  check_chars(prog, chars);
  const CycloSum canonical = partial_sum(prog, m, chars, p, budget);
  const int level = stratum_level(m);
  StratumProgram sp(prog, m, p, level);
  CosetSpace space(m, p);
  const i64 q = sp.q();
  std::vector<i64> psi = chars.slots();
  for (i64& v : psi) v = mod(v, q);
  // Lifts beyond p^level do not change anything mod p^level.
  std::vector<i64> lifts;
  for (i64 mk : space.moduli()) lifts.push_back(q / mk);

  std::mt19937_64 rng(seed);
  std::vector<i64> a(sp.slots()), shifted(space.moduli().size());
  for (int t = 0; t < trials; ++t) {
    CycloSum trial(p, level);
    space.for_each(
        [&](const i64* c) {
          for (size_t k = 0; k < shifted.size(); ++k) {
            std::uniform_int_distribution<i64> pick(0, lifts[k] - 1);
            shifted[k] = c[k] + space.moduli()[k] * pick(rng);
          }
          sp.coefficients(shifted.data(), a.data());
          i64 idx = 0;
          for (int s = 0; s < sp.slots(); ++s) idx = mod(idx + mulmod(psi[s], a[s], q), q);
          trial.add_root(idx);
        },
        budget);
    if (!(trial == canonical)) return false;
  }
  return true;
}

bool representative_shift_check(WeylElement w, const ExponentMatrix& m,
                                const CharacterPair& chars, i64 p, int trials,
                                std::uint64_t seed, i64 budget) {
  switch (w) {
    case WeylElement::LongElement:
      return representative_shift_check(long_program(m.n()), m, chars, p, trials, seed, budget);
    case WeylElement::Star:
      return representative_shift_check(star_program(m.n()), m, chars, p, trials, seed, budget);
    case WeylElement::Gl4BlockSwap:
      return representative_shift_check(blockswap_program(), m, chars, p, trials, seed, budget);
    case WeylElement::Gl4Mixed:
      return representative_shift_check(mixed_program(), m, chars, p, trials, seed, budget);
  }
  return false;
}

CharacterGrid CharacterGrid::units_mod(i64 q, i64 p, int n) {
  std::vector<i64> u;
  for (i64 x = 0; x < q; ++x)
    if (x % p != 0) u.push_back(x);
  return {std::vector<std::vector<i64>>(n, u), std::vector<std::vector<i64>>(n, u)};
}

i64 CharacterGrid::size() const {
  i64 s = 1;
  for (const auto& v : psi) s = checked_mul(s, static_cast<i64>(v.size()));
  for (const auto& v : psi_prime) s = checked_mul(s, static_cast<i64>(v.size()));
  return s;
}

PreparedSum::PreparedSum(const PhaseProgram& prog, WeylElement w, const ModulusSpec& spec,
                         i64 budget)
    : n_(prog.n), p_(spec.p), level_(spec.height()) {
  if (spec.n() != prog.n) throw LengthMismatch("r length differs from program rank");
  std::map<std::vector<i64>, i64> hist;
  std::vector<i64> a(2 * n_);
  for (const ExponentMatrix& m : enumerate_strata(w, spec.r)) {
    StratumProgram sp(prog, m, p_, level_);
    reduced_ = std::max(reduced_, sp.max_exponent());
    CosetSpace(m, p_).for_each(
        [&](const i64* c) {
          sp.coefficients(c, a.data());
          ++hist[a];
          ++terms_;
        },
        budget);
  }
  const i64 shrink = checked_pow(p_, level_ - reduced_);
  for (const auto& [key, count] : hist) {
    std::vector<i64> k(key);
    for (i64& v : k) v /= shrink;
    keys_.push_back(std::move(k));
    counts_.push_back(count);
  }
}

CycloSum PreparedSum::evaluate(const CharacterPair& chars) const {
  if (chars.n() != n_) throw LengthMismatch("character length differs from n");
  const i64 q = checked_pow(p_, reduced_);
  const i64 scale = checked_pow(p_, level_ - reduced_);
  std::vector<i64> psi = chars.slots();
  for (i64& v : psi) v = mod(v, q);
  CycloSum out(p_, level_);
  for (size_t t = 0; t < keys_.size(); ++t) {
    i64 idx = 0;
    for (int s = 0; s < 2 * n_; ++s) idx = mod(idx + mulmod(psi[s], keys_[t][s], q), q);
    out.add_root(idx * scale, counts_[t]);
  }
  return out;
}

namespace {

// Odometer over a product of candidate lists.
bool advance(std::vector<size_t>& ix, const std::vector<std::vector<i64>>& lists) {
  for (int s = static_cast<int>(ix.size()) - 1; s >= 0; --s) {
    if (++ix[s] < lists[s].size()) return true;
    ix[s] = 0;
  }
  return false;
}

constexpr i64 kDenseCells = i64{1} << 24;

}  // namespace

void PreparedSum::for_each_character(const CharacterGrid& grid, const Visitor& visit) const {
  if (static_cast<int>(grid.psi.size()) != n_ || static_cast<int>(grid.psi_prime.size()) != n_)
    throw LengthMismatch("grid length differs from n");
  for (const auto* lists : {&grid.psi, &grid.psi_prime})
    for (const auto& l : *lists)
      if (l.empty()) return;
  const i64 q = checked_pow(p_, reduced_);

  // Largest intermediate table of the separable transform.
  bool dense = true;
  {
    i64 cells = q;
    for (int s = 0; s < n_ && dense; ++s) {
      if (cells > kDenseCells / q) dense = false;
      cells *= q;
    }
    i64 worst = cells;
    for (int s = 0; s < n_ && dense; ++s) {
      worst = worst / q * std::max<i64>(1, static_cast<i64>(grid.psi_prime[s].size()));
      if (worst > kDenseCells) dense = false;
    }
  }
  // Per outer character: the transform touches every cell of each stage, the
  // direct path touches every key once per psi' vector.
  if (dense) {
    double transform = 0.0, prefix = 1.0, direct = static_cast<double>(keys_.size()) * 2 * n_;
    for (int s = 0; s < n_; ++s) {
      const double g = static_cast<double>(grid.psi_prime[s].size());
      transform += prefix * g * std::pow(static_cast<double>(q), n_ - s + 1);
      prefix *= g;
    }
    direct *= prefix;
    dense = transform < direct;
  }

  std::vector<size_t> xi(n_, 0);
  std::vector<i64> x(n_), xo(n_), y(n_);
  do {
    for (int s = 0; s < n_; ++s) {
      xo[s] = grid.psi[s][xi[s]];
      x[s] = mod(xo[s], q);
    }

    if (!dense) {
      std::vector<size_t> yi(n_, 0);
      do {
        CharacterPair cp{x, {}};
        for (int s = 0; s < n_; ++s) cp.psi_prime.push_back(grid.psi_prime[s][yi[s]]);
        for (int s = 0; s < n_; ++s) y[s] = cp.psi_prime[s];
        std::vector<i64> psi = cp.slots();
        CycloSum v(p_, reduced_);
        for (size_t t = 0; t < keys_.size(); ++t) {
          i64 idx = 0;
          for (int s = 0; s < 2 * n_; ++s) idx = mod(idx + mulmod(psi[s], keys_[t][s], q), q);
          v.add_root(idx, counts_[t]);
        }
        visit(xo, y, v);
      } while (advance(yi, grid.psi_prime));
      continue;
    }

    // Table over (b_1..b_n, e): b are the psi' coefficients, e the partial phase.
    std::vector<i64> dims(n_, q);
    i64 cells = q;
    for (int s = 0; s < n_; ++s) cells *= q;
    std::vector<i64> table(cells, 0);
    for (size_t t = 0; t < keys_.size(); ++t) {
      i64 e = 0, b = 0;
      for (int s = 0; s < n_; ++s) {
        e = mod(e + mulmod(x[s], keys_[t][s], q), q);
        b = b * q + keys_[t][n_ + s];
      }
      table[b * q + e] += counts_[t];
    }
    // Replace coordinate b_s by the character value y_s, one slot at a time.
    for (int s = 0; s < n_; ++s) {
      const auto& ys = grid.psi_prime[s];
      const i64 g = static_cast<i64>(ys.size());
      i64 outer = 1, inner = q;
      for (int t = 0; t < s; ++t) outer *= dims[t];
      for (int t = s + 1; t < n_; ++t) inner *= dims[t];
      std::vector<i64> next(outer * g * inner, 0);
      for (i64 o = 0; o < outer; ++o) {
        for (i64 gi = 0; gi < g; ++gi) {
          const i64 yv = mod(ys[gi], q);
          i64* dst = next.data() + (o * g + gi) * inner;
          for (i64 b = 0; b < q; ++b) {
            const i64* src = table.data() + (o * q + b) * inner;
            const i64 shift = mulmod(yv, b, q);
            for (i64 blk = 0; blk < inner; blk += q) {
              for (i64 e = 0; e < q; ++e) {
                i64 v = src[blk + e];
                if (v == 0) continue;
                i64 f = e + shift;
                if (f >= q) f -= q;
                dst[blk + f] += v;
              }
            }
          }
        }
      }
      dims[s] = g;
      table.swap(next);
    }

    std::vector<size_t> yi(n_, 0);
    i64 cell = 0;
    do {
      for (int s = 0; s < n_; ++s) y[s] = grid.psi_prime[s][yi[s]];
      CycloSum::Vector mult = Eigen::Map<const CycloSum::Vector>(table.data() + cell * q, q);
      visit(xo, y, CycloSum(p_, reduced_, std::move(mult), terms_));
      ++cell;
    } while (advance(yi, grid.psi_prime));
  } while (advance(xi, grid.psi));
}

}  // namespace kloost
