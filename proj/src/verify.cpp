#include "kloost/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "kloost/bounds.hpp"
#include "kloost/bruhat.hpp"
#include "kloost/classical.hpp"
#include "kloost/gl4.hpp"
#include "kloost/klsums.hpp"

namespace kloost {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kComplexTol = 1e-9;

// Collects the first few failure descriptions and a count.
struct Failures {
  i64 count = 0;
  std::vector<std::string> first;

  void add(const std::string& s) {
    if (count++ < 3) first.push_back(s);
  }
  std::string summary() const {
    std::string out = std::to_string(count) + " failure(s)";
    for (const auto& s : first) out += "; " + s;
    return out;
  }
};

template <class T>
std::string list(const std::vector<T>& v) {
  std::string s = "(";
  for (size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + std::to_string(v[k]);
  return s + ")";
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<i64> residues(i64 q) {
  std::vector<i64> v(q);
  for (i64 x = 0; x < q; ++x) v[x] = x;
  return v;
}

const PhaseProgram& program_for(WeylElement w, int n) {
  static std::map<std::pair<WeylElement, int>, PhaseProgram> cache;
  auto key = std::make_pair(w, n);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, w == WeylElement::LongElement ? long_program(n) : star_program(n)).first;
  return it->second;
}

// Exact evaluation over all unit characters for r = (1,...,1).
CriterionResult exact_grid(int id, WeylElement w) {
  CriterionResult res{id, "", false, "", 0};
  const auto t0 = Clock::now();
  Failures fails;
  i64 checked = 0;
  for (int n : {2, 3, 4}) {
    for (i64 p : {2, 3, 5, 7}) {
      const i64 target = w == WeylElement::Star
                             ? checked_pow(p, n - 1) + checked_pow(p, n - 2)
                             : (n % 2 == 0 ? 1 : -1) * (p + 1);
      ModulusSpec spec{p, std::vector<int>(n, 1)};
      PreparedSum sum(program_for(w, n), w, spec);
      sum.for_each_character(
          CharacterGrid::units_mod(p, p, n),
          [&](const std::vector<i64>& psi, const std::vector<i64>& psip, const CycloSum& v) {
            ++checked;
            ComplexValue z = v.eval_complex();
            if (!v.equals_integer(target) ||
                std::abs(z.re - static_cast<double>(target)) > kComplexTol ||
                std::abs(z.im) > kComplexTol)
              fails.add("n=" + std::to_string(n) + " p=" + std::to_string(p) + " psi=" +
                        list(psi) + " psi'=" + list(psip));
          });
    }
  }
  res.seconds = seconds_since(t0);
  const bool fast = res.seconds < 60.0;
  res.passed = fails.count == 0 && fast;
  std::ostringstream os;
  os << checked << " character vectors";
  if (fails.count) os << ", " << fails.summary();
  if (!fast) os << ", runtime above 60 s";
  res.detail = os.str();
  return res;
}

CriterionResult gl2_oracle() {
  CriterionResult res{3, "GL(2) oracle: kl_long at n=1 equals the classical sum", false, "", 0};
  const auto t0 = Clock::now();
  Failures fails;
  i64 checked = 0;
  const PhaseProgram& prog = program_for(WeylElement::LongElement, 1);
  for (i64 p : {2, 3, 5}) {
    for (int r = 1; r <= 4; ++r) {
      const i64 q = checked_pow(p, r);
      ClassicalSumTable table(q);
      PreparedSum sum(prog, WeylElement::LongElement, ModulusSpec{p, {r}});
      CharacterGrid grid{{residues(q)}, {residues(q)}};
      sum.for_each_character(
          grid, [&](const std::vector<i64>& psi, const std::vector<i64>& psip, const CycloSum& v) {
            ++checked;
            if (!(v == table.evaluate(psip[0], psi[0]).to_cyclo(p)))
              fails.add("p=" + std::to_string(p) + " r=" + std::to_string(r) +
                        " psi=" + std::to_string(psi[0]) + " psi'=" + std::to_string(psip[0]));
          });
    }
  }
  res.seconds = seconds_since(t0);
  const bool fast = res.seconds < 120.0;
  res.passed = fails.count == 0 && fast;
  res.detail = std::to_string(checked) + " character pairs" +
               (fails.count ? ", " + fails.summary() : "") + (fast ? "" : ", runtime above 120 s");
  return res;
}

CriterionResult gl3_oracle() {
  CriterionResult res{4, "GL(3) oracle: kl_long at n=2 matches the BFG sum", false, "", 0};
  const auto t0 = Clock::now();
  Failures fails;
  i64 checked = 0;
  const PhaseProgram& prog = program_for(WeylElement::LongElement, 2);
  for (i64 p : {2, 3, 5}) {
    for (int r1 = 0; r1 <= 3; ++r1) {
      for (int r2 = 0; r2 <= 3; ++r2) {
        if (checked_pow(p, r1 + r2) > 10'000) continue;
        Gl3KloostermanSet bfg(checked_pow(p, r1), checked_pow(p, r2));
        PreparedSum sum(prog, WeylElement::LongElement, ModulusSpec{p, {r1, r2}});
        CharacterGrid grid{{residues(p), residues(p)}, {residues(p), residues(p)}};
        sum.for_each_character(grid, [&](const std::vector<i64>& psi,
                                         const std::vector<i64>& psip, const CycloSum& v) {
          ++checked;
          // (m1, m2, n1, n2) = (psi_1, psi_2, psi'_2, psi'_1).
          ComplexValue a = v.eval_complex();
          ComplexValue b = bfg.evaluate(psi[0], psi[1], psip[1], psip[0]).eval_complex();
          if (std::hypot(a.re - b.re, a.im - b.im) >= kComplexTol)
            fails.add("p=" + std::to_string(p) + " r=" + list(std::vector<int>{r1, r2}) +
                      " psi=" + list(psi) + " psi'=" + list(psip));
        });
      }
    }
  }
  res.seconds = seconds_since(t0);
  const bool fast = res.seconds < 600.0;
  res.passed = fails.count == 0 && fast;
  res.detail = std::to_string(checked) + " character quadruples" +
               (fails.count ? ", " + fails.summary() : "") + (fast ? "" : ", runtime above 600 s");
  return res;
}

CriterionResult counting() {
  CriterionResult res{5, "Counting: coset cardinality equals the DR count", false, "", 0};
  const auto t0 = Clock::now();
  Failures fails;
  i64 strata = 0, enumerated = 0;
  for (int n = 1; n <= 3; ++n) {
    std::vector<WeylElement> ws{WeylElement::LongElement};
    if (n >= 2) ws.push_back(WeylElement::Star);
    for (WeylElement w : ws) {
      for (const auto& r : r_vectors(n, 6)) {
        for (const auto& m : enumerate_strata(w, r)) {
          for (i64 p : {2, 3, 5}) {
            ++strata;
            const i64 card = coset_cardinality(m, p);
            if (card != dr_count(m, r, p))
              fails.add(to_string(w) + " p=" + std::to_string(p) + " " + m.to_string());
            // Cross-check the closed count against explicit enumeration.
            if (card <= 20'000) {
              ++enumerated;
              if (static_cast<i64>(iterate_cosets(m, p, card).size()) != card)
                fails.add("enumeration " + to_string(w) + " " + m.to_string());
            }
          }
        }
      }
    }
  }
  res.seconds = seconds_since(t0);
  res.passed = fails.count == 0;
  res.detail = std::to_string(strata) + " (stratum, p) pairs, " + std::to_string(enumerated) +
               " enumerated" + (fails.count ? ", " + fails.summary() : "");
  return res;
}

CriterionResult bruhat(std::uint64_t seed) {
  CriterionResult res{6, "Bruhat verifier: decomposition equals the closed forms", false, "", 0};
  const auto t0 = Clock::now();
  Failures fails;
  i64 draws = 0, positive = 0, positive_ok = 0;
  std::mt19937_64 rng(seed);
  for (int n = 1; n <= 3; ++n) {
    for (i64 p : {2, 3, 5}) {
      std::vector<WeylElement> ws{WeylElement::LongElement};
      if (n >= 2) ws.push_back(WeylElement::Star);
      for (WeylElement w : ws) {
        const Layout& layout = Layout::of(w, n);
        const i64 cmax = checked_pow(p, 3);
        for (int d = 0; d < 100; ++d) {
          ++draws;
          std::vector<PadicParam> params;
          bool all_positive = true;
          for (int k = 0; k < layout.size(); ++k) {
            PadicParam a;
            a.m = std::uniform_int_distribution<int>(0, 2)(rng);
            do {
              a.c = std::uniform_int_distribution<i64>(0, cmax - 1)(rng);
            } while (a.m > 0 && a.c % p == 0);
            all_positive = all_positive && a.m > 0;
            params.push_back(a);
          }
          bool ok = false;
          std::string why;
          try {
            RationalMatrix g = b_product<Rational>(layout.word, params, n, p);
            RationalTriple got = bruhat_decompose<Rational>(g);
            RationalTriple want = closed_form_triple(w, n, p, params);
            const bool integral = is_p_integral(g, p);
            ok = integral && exact_equal<Rational>(got.L, want.L) &&
                 exact_equal<Rational>(got.N, want.N) && exact_equal<Rational>(got.R, want.R);
            if (!integral) why = " (b_product not p-integral)";
          } catch (const Error& e) {
            why = std::string(" (") + e.what() + ")";
          }
          if (all_positive) {
            ++positive;
            positive_ok += ok;
          }
          if (!ok) {
            std::string ps;
            for (const auto& a : params)
              ps += (ps.empty() ? "" : " ") + std::to_string(a.c) + ":" + std::to_string(a.m);
            fails.add(to_string(w) + " n=" + std::to_string(n) + " p=" + std::to_string(p) +
                      " params " + ps + why);
          }
        }
      }
    }
  }
  res.seconds = seconds_since(t0);
  res.passed = fails.count == 0 && res.seconds < 60.0;
  res.detail = std::to_string(draws) + " draws; all-m>=1 subpopulation " +
               std::to_string(positive_ok) + "/" + std::to_string(positive) + " agree" +
               (fails.count ? "; " + fails.summary() : "");
  return res;
}

CharacterPair random_chars(int n, i64 q, std::mt19937_64& rng) {
  std::uniform_int_distribution<i64> pick(0, q - 1);
  CharacterPair c{std::vector<i64>(n), std::vector<i64>(n)};
  for (int j = 0; j < n; ++j) {
    c.psi[j] = pick(rng);
    c.psi_prime[j] = pick(rng);
  }
  return c;
}

CriterionResult shift_invariance(std::uint64_t seed) {
  CriterionResult res{7, "Well-definedness: representative shift check", false, "", 0};
  const auto t0 = Clock::now();
  Failures fails;
  i64 strata = 0;
  std::mt19937_64 rng(seed);
  auto check = [&](WeylElement w, i64 p, const std::vector<int>& r) {
    const int n = static_cast<int>(r.size());
    const i64 q = ModulusSpec{p, r}.trivial_bound();
    std::vector<CharacterPair> chars{CharacterPair::ones(n), random_chars(n, q, rng),
                                     random_chars(n, q, rng)};
    for (const auto& m : enumerate_strata(w, r)) {
      ++strata;
      for (const auto& c : chars) {
        if (!representative_shift_check(w, m, c, p, 5, rng())) {
          fails.add(to_string(w) + " p=" + std::to_string(p) + " r=" + list(r) + " " +
                    m.to_string() + " psi=" + list(c.psi) + " psi'=" + list(c.psi_prime));
          break;
        }
      }
    }
  };
  for (int n : {2, 3, 4})
    for (i64 p : {2, 3, 5, 7})
      for (WeylElement w : {WeylElement::Star, WeylElement::LongElement})
        check(w, p, std::vector<int>(n, 1));
  for (i64 p : {2, 3, 5})
    for (int r = 1; r <= 4; ++r) check(WeylElement::LongElement, p, {r});
  for (i64 p : {2, 3, 5})
    for (int r1 = 0; r1 <= 3; ++r1)
      for (int r2 = 0; r2 <= 3; ++r2)
        if (checked_pow(p, r1 + r2) <= 10'000) check(WeylElement::LongElement, p, {r1, r2});
  res.seconds = seconds_since(t0);
  res.passed = fails.count == 0;
  res.detail = std::to_string(strata) + " strata" +
               (fails.count ? ", failing strata: " + fails.summary() : "");
  return res;
}

CriterionResult weil() {
  CriterionResult res{8, "Weil bound for classical sums, c <= 200", false, "", 0};
  const auto t0 = Clock::now();
  Failures fails;
  i64 checked = 0;
  double worst = 0.0;
  for (i64 c = 1; c <= 200; ++c) {
    ClassicalSumTable table(c);
    for (i64 m = 0; m < c; ++m) {
      for (i64 mp = 0; mp < c; ++mp) {
        ++checked;
        const double a = table.evaluate_abs(m, mp);
        const double b = weil_bound(m, mp, c);
        worst = std::max(worst, a / b);
        if (a > b + 1e-9)
          fails.add("c=" + std::to_string(c) + " m=" + std::to_string(m) +
                    " m'=" + std::to_string(mp));
      }
    }
  }
  res.seconds = seconds_since(t0);
  res.passed = fails.count == 0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", worst);
  res.detail = std::to_string(checked) + " sums, max |S|/bound = " + buf +
               (fails.count ? ", " + fails.summary() : "");
  return res;
}

CriterionResult gl4(std::uint64_t seed) {
  CriterionResult res{9, "GL(4) family consistency", false, "", 0};
  const auto t0 = Clock::now();
  Failures fails;
  i64 compared = 0, counted = 0;
  std::mt19937_64 rng(seed);
  for (i64 p : {2, 3}) {
    for (const auto& r : r_vectors(3, 4)) {
      ModulusSpec spec{p, r};
      std::vector<CharacterPair> chars{CharacterPair::ones(3), random_chars(3, p * p, rng)};
      for (const auto& c : chars) {
        ++compared;
        if (!(gl4_full({Gl4Weyl::LongGl4}, spec, c).exact == kl_long(spec, c).exact))
          fails.add("long p=" + std::to_string(p) + " r=" + list(r) + " psi=" + list(c.psi) +
                    " psi'=" + list(c.psi_prime));
        if (!(gl4_full({Gl4Weyl::StarGl4}, spec, c).exact == kl_star(spec, c).exact))
          fails.add("star p=" + std::to_string(p) + " r=" + list(r) + " psi=" + list(c.psi) +
                    " psi'=" + list(c.psi_prime));
        for (Gl4Element w : {Gl4Element{Gl4Weyl::BlockSwap}, Gl4Element{Gl4Weyl::Mixed},
                             Gl4Element{Gl4Weyl::Mixed, true}}) {
          if (!verify_trivial_bound(gl4_full(w, spec, c), spec))
            fails.add("trivial bound " + to_string(w.tag) + " r=" + list(r));
        }
      }
      for (WeylElement w : {WeylElement::Gl4BlockSwap, WeylElement::Gl4Mixed}) {
        for (const auto& m : enumerate_strata(w, r)) {
          ++counted;
          if (coset_cardinality(m, p) != dr_count(m, r, p))
            fails.add("DR count " + to_string(w) + " p=" + std::to_string(p) + " " + m.to_string());
        }
      }
    }
  }
  res.seconds = seconds_since(t0);
  res.passed = fails.count == 0;
  res.detail = std::to_string(compared) + " character cases, " + std::to_string(counted) +
               " BlockSwap/Mixed strata counted" + (fails.count ? ", " + fails.summary() : "");
  return res;
}

std::vector<ScanRow> power_saving_rows(std::uint64_t seed) {
  std::vector<ScanRow> rows;
  std::mt19937_64 rng(seed);
  for (int n : {2, 3}) {
    for (i64 p : {2, 3, 5}) {
      std::vector<CharacterPair> chars{CharacterPair::ones(n)};
      if (p > 2) {
        std::uniform_int_distribution<i64> pick(1, p - 1);
        CharacterPair c{std::vector<i64>(n), std::vector<i64>(n)};
        for (int j = 0; j < n; ++j) {
          c.psi[j] = pick(rng);
          c.psi_prime[j] = pick(rng);
        }
        chars.push_back(c);
      }
      for (const auto& c : chars) {
        for (WeylElement w : {WeylElement::LongElement, WeylElement::Star}) {
          auto part = delta_scan(w, p, n, 6, c);
          rows.insert(rows.end(), part.begin(), part.end());
        }
      }
    }
  }
  sort_rows(rows);
  return rows;
}

CriterionResult power_saving(const VerifyOptions& opts) {
  CriterionResult res{10, "Power saving scan: ratio <= 1, < 1 for nonzero sums", false, "", 0};
  const auto t0 = Clock::now();
  Failures fails;
  std::vector<ScanRow> rows;
  try {
    rows = power_saving_rows(opts.seed);
  } catch (const Error& e) {
    res.seconds = seconds_since(t0);
    res.detail = std::string("scan aborted: ") + e.what();
    return res;
  }
  double max_ratio = -std::numeric_limits<double>::infinity();
  i64 skipped = 0;
  for (const auto& row : rows) {
    if (row.skipped) {
      ++skipped;
      continue;
    }
    if (std::isnan(row.ratio)) continue;
    max_ratio = std::max(max_ratio, row.ratio);
    if (row.ratio > 1.0) fails.add("ratio above 1 at " + row.weyl + " r=" + list(row.r));
    if (row.height() >= 1 && row.abs_value > 0.0 && !(row.ratio < 1.0))
      fails.add("no saving at " + row.weyl + " p=" + std::to_string(row.p) + " r=" + list(row.r));
  }
  std::string fixture_note;
  if (!opts.fixture_path.empty()) {
    namespace fs = std::filesystem;
    if (fs::exists(opts.fixture_path)) {
      std::ifstream in(opts.fixture_path);
      if (read_csv(in) != rows) {
        fails.add("rows differ from the archived fixture");
      } else {
        fixture_note = ", matches fixture";
      }
    } else {
      if (fs::path(opts.fixture_path).has_parent_path())
        fs::create_directories(fs::path(opts.fixture_path).parent_path());
      std::ofstream out(opts.fixture_path);
      write_csv(out, rows);
      fixture_note = ", fixture written";
    }
  }
  res.seconds = seconds_since(t0);
  res.passed = fails.count == 0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", max_ratio);
  res.detail = std::to_string(rows.size()) + " rows, " + std::to_string(skipped) +
               " skipped, max ratio " + buf + fixture_note +
               (fails.count ? ", " + fails.summary() : "");
  return res;
}

}  // namespace

CriterionResult run_criterion(int id, const VerifyOptions& opts) {
  CriterionResult res;
  try {
    switch (id) {
      case 1:
        res = exact_grid(1, WeylElement::Star);
        res.name = "Exact evaluation: kl_star = p^(n-1) + p^(n-2)";
        break;
      case 2:
        res = exact_grid(2, WeylElement::LongElement);
        res.name = "Exact evaluation: kl_long = (-1)^n (p+1)";
        break;
      case 3: res = gl2_oracle(); break;
      case 4: res = gl3_oracle(); break;
      case 5: res = counting(); break;
      case 6: res = bruhat(opts.seed); break;
      case 7: res = shift_invariance(opts.seed); break;
      case 8: res = weil(); break;
      case 9: res = gl4(opts.seed); break;
      case 10: res = power_saving(opts); break;
      default: throw InvalidArgument("criterion id must be in 1.." + std::to_string(kCriterionCount));
    }
  } catch (const BudgetExceeded& e) {
    res = CriterionResult{id, "criterion " + std::to_string(id), false,
                          std::string("budget exceeded: ") + e.what(), 0};
  }
  return res;
}

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "exact-evals") return {1, 2};
  if (suite == "oracles") return {3, 4};
  if (suite == "counts") return {5};
  if (suite == "bruhat") return {6};
  if (suite == "shift-invariance") return {7};
  if (suite == "weil") return {8};
  if (suite == "gl4") return {9};
  if (suite == "scan") return {10};
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  throw InvalidArgument("unknown suite '" + suite + "'");
}

std::string format_result(const CriterionResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
  return std::string(r.passed ? "PASS" : "FAIL") + " criterion " + std::to_string(r.id) + ": " +
         r.name + " [" + secs + " s] " + r.detail;
}

}  // namespace kloost
