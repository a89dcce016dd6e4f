#include "kloost/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kloost/bounds.hpp"
#include "kloost/bruhat.hpp"
#include "kloost/gl4.hpp"
#include "kloost/klsums.hpp"
#include "kloost/verify.hpp"

namespace kloost {

namespace {

struct UsageError : Error {
  using Error::Error;
};

template <class T>
std::vector<T> parse_list(const std::string& s, const std::string& flag) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(static_cast<T>(v));
    } catch (const std::logic_error&) {
      throw UsageError(flag + ": '" + item + "' is not an integer");
    }
  }
  return out;
}

std::vector<PadicParam> parse_params(const std::string& s) {
  std::vector<PadicParam> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("--params: expected c:m, got '" + item + "'");
    auto c = parse_list<i64>(item.substr(0, colon), "--params");
    auto m = parse_list<int>(item.substr(colon + 1), "--params");
    if (c.size() != 1 || m.size() != 1) throw UsageError("--params: expected c:m, got '" + item + "'");
    out.push_back({c[0], m[0]});
  }
  return out;
}

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

template <class T>
std::string join(const std::vector<T>& v, char sep) {
  std::string s;
  for (size_t k = 0; k < v.size(); ++k) s += (k ? std::string(1, sep) : "") + std::to_string(v[k]);
  return s;
}

CharacterPair characters(const std::string& psi, const std::string& psip, int n) {
  CharacterPair c = CharacterPair::ones(n);
  if (!psi.empty()) c.psi = parse_list<i64>(psi, "--psi");
  if (!psip.empty()) c.psi_prime = parse_list<i64>(psip, "--psi-prime");
  if (c.n() != n || static_cast<int>(c.psi_prime.size()) != n)
    throw UsageError("--psi and --psi-prime need " + std::to_string(n) + " entries");
  return c;
}

nlohmann::json matrix_json(const RationalMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

struct ComputeArgs {
  std::string group = "gln", weyl = "long", r, psi, psip;
  i64 p = 0;
  bool json = false, csv = false;
  i64 budget = 0;
};

int run_compute(const ComputeArgs& a, std::ostream& out) {
  if (a.json && a.csv) throw UsageError("--json and --csv are exclusive");
  ModulusSpec spec{a.p, parse_list<int>(a.r, "--r")};
  if (spec.r.empty()) throw UsageError("--r needs at least one entry");
  const CharacterPair chars = characters(a.psi, a.psip, spec.n());
  const i64 budget = a.budget > 0 ? a.budget : default_term_budget();
  std::optional<KloostermanResult> res;
  if (a.group == "gln") {
    WeylElement w = weyl_from_string(a.weyl);
    if (w == WeylElement::LongElement) {
      res.emplace(kl_long(spec, chars, budget));
    } else if (w == WeylElement::Star) {
      res.emplace(kl_star(spec, chars, budget));
    } else {
      throw UsageError("--group gln supports --weyl long|star");
    }
  } else if (a.group == "gl4") {
    if (spec.n() != 3) throw UsageError("--group gl4 needs --r with 3 entries");
    res.emplace(gl4_full({gl4_from_string(a.weyl)}, spec, chars, budget));
  } else {
    throw UsageError("--group must be gln or gl4");
  }
  // Components inside the rounding bound are exact zeros.
  ComplexValue z = res->complex;
  if (std::abs(z.re) <= z.eps) z.re = 0.0;
  if (std::abs(z.im) <= z.eps) z.im = 0.0;
  if (a.csv) {
    out << "group,weyl,p,r,psi,psi_prime,re,im,abs_value,trivial_bound,term_count\n"
        << a.group << ',' << a.weyl << ',' << spec.p << ',' << join(spec.r, ';') << ','
        << join(chars.psi, ';') << ',' << join(chars.psi_prime, ';') << ',' << fmt12(z.re) << ','
        << fmt12(z.im) << ',' << fmt12(z.abs()) << ',' << spec.trivial_bound() << ','
        << res->term_count << '\n';
    return kExitOk;
  }
  nlohmann::json j = res->to_json();
  j["complex"]["re"] = round_significant(z.re);
  j["complex"]["im"] = round_significant(z.im);
  j["abs"] = round_significant(z.abs());
  j["group"] = a.group;
  j["weyl"] = a.weyl;
  j["p"] = spec.p;
  j["r"] = spec.r;
  j["psi"] = chars.psi;
  j["psi_prime"] = chars.psi_prime;
  j["trivial_bound"] = spec.trivial_bound();
  out << j.dump(2) << '\n';
  return kExitOk;
}

struct ScanArgs {
  std::string group = "gln", weyl = "long", psi, psip, out_path;
  i64 p = 0;
  int n = 2, r_budget = 4;
  bool json = false;
  i64 budget = 0;
};

int run_scan(const ScanArgs& a, std::ostream& out) {
  const i64 budget = a.budget > 0 ? a.budget : default_term_budget();
  std::vector<ScanRow> rows;
  if (a.group == "gln") {
    rows = delta_scan(weyl_from_string(a.weyl), a.p, a.n, a.r_budget,
                      characters(a.psi, a.psip, a.n), budget);
  } else if (a.group == "gl4") {
    rows = delta_scan(Gl4Element{gl4_from_string(a.weyl)}, a.p, a.r_budget,
                      characters(a.psi, a.psip, 3), budget);
  } else {
    throw UsageError("--group must be gln or gl4");
  }
  std::ofstream file;
  if (!a.out_path.empty()) {
    file.open(a.out_path);
    if (!file) throw UsageError("cannot open " + a.out_path);
  }
  std::ostream& dst = a.out_path.empty() ? out : file;
  if (a.json) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& row : rows) j.push_back(row.to_json());
    dst << j.dump(2) << '\n';
  } else {
    write_csv(dst, rows);
  }
  return kExitOk;
}

int run_decompose(const std::string& weyl, i64 p, const std::string& params_s, std::ostream& out) {
  const WeylElement w = weyl_from_string(weyl);
  const auto params = parse_params(params_s);
  const int len = static_cast<int>(params.size());
  // Word lengths: n(n+1)/2 for the long element, 2n-1 for the star element.
  int n = 0;
  for (int k = 1; k <= 64 && n == 0; ++k)
    if ((w == WeylElement::LongElement && k * (k + 1) / 2 == len) ||
        (w == WeylElement::Star && k >= 2 && 2 * k - 1 == len))
      n = k;
  if (n == 0 || (w != WeylElement::LongElement && w != WeylElement::Star))
    throw UsageError("--params length does not match a long or star word");
  if (!is_prime(static_cast<u64>(p))) throw UsageError("--p must be prime");
  const Layout& layout = Layout::of(w, n);
  RationalMatrix g = b_product<Rational>(layout.word, params, n, p);
  RationalTriple t = bruhat_decompose<Rational>(g);
  RationalTriple closed = closed_form_triple(w, n, p, params);
  const bool agree = exact_equal<Rational>(t.L, closed.L) && exact_equal<Rational>(t.N, closed.N) &&
                     exact_equal<Rational>(t.R, closed.R);
  nlohmann::json j{{"weyl", weyl},
                   {"n", n},
                   {"p", p},
                   {"word", layout.word},
                   {"g", matrix_json(g)},
                   {"L", matrix_json(t.L)},
                   {"N", matrix_json(t.N)},
                   {"R", matrix_json(t.R)},
                   {"p_integral", is_p_integral(g, p)},
                   {"closed_form_agrees", agree}};
  out << j.dump(2) << '\n';
  return kExitOk;
}

int run_count(const std::string& weyl, i64 p, const std::string& r_s, std::ostream& out) {
  ModulusSpec spec{p, parse_list<int>(r_s, "--r")};
  if (!is_prime(static_cast<u64>(p))) throw UsageError("--p must be prime");
  const WeylElement w = weyl_from_string(weyl);
  nlohmann::json strata = nlohmann::json::array();
  i64 total = 0;
  for (const auto& m : enumerate_strata(w, spec.r)) {
    const i64 card = coset_cardinality(m, p);
    total += card;
    strata.push_back({{"m", m.to_json()}, {"cardinality", card}, {"dr_count", dr_count(m, spec.r, p)}});
  }
  nlohmann::json j{{"weyl", weyl}, {"p", p},         {"r", spec.r},
                   {"strata", strata}, {"stratum_count", strata.size()}, {"total_cosets", total}};
  out << j.dump(2) << '\n';
  return kExitOk;
}

int run_verify(const std::string& suite, const std::string& fixture, std::ostream& out) {
  VerifyOptions opts;
  opts.fixture_path = fixture;
  bool ok = true;
  for (int id : suite_criteria(suite)) {
    CriterionResult r = run_criterion(id, opts);
    out << format_result(r) << '\n';
    ok = ok && r.passed;
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Kloosterman sums on GL(n+1) over prime-power moduli"};
  app.require_subcommand(1);

  ComputeArgs ca;
  auto* compute = app.add_subcommand("compute", "Evaluate one Kloosterman sum");
  compute->add_option("--group", ca.group, "gln or gl4")->check(CLI::IsMember({"gln", "gl4"}));
  compute->add_option("--weyl", ca.weyl, "long, star, blockswap or mixed");
  compute->add_option("--p", ca.p, "Prime")->required();
  compute->add_option("--r", ca.r, "Comma-separated exponents r_1..r_n")->required();
  compute->add_option("--psi", ca.psi, "Comma-separated psi_1..psi_n (default all 1)");
  compute->add_option("--psi-prime", ca.psip, "Comma-separated psi'_1..psi'_n (default all 1)");
  compute->add_flag("--json", ca.json, "JSON output (default)");
  compute->add_flag("--csv", ca.csv, "CSV output");
  compute->add_option("--budget", ca.budget, "Term budget (default KLOOSTERMAN_BUDGET or 1e7)");

  std::string suite = "all", fixture;
  auto* verify = app.add_subcommand("verify", "Run acceptance checks");
  verify->add_option("--suite", suite, "exact-evals, oracles, bruhat, counts, shift-invariance, weil, gl4, scan or all")
      ->check(CLI::IsMember({"exact-evals", "oracles", "bruhat", "counts", "shift-invariance",
                             "weil", "gl4", "scan", "all"}));
  verify->add_option("--fixture", fixture, "Regression fixture for the scan suite");

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "Power-saving scan over r-vectors");
  scan->add_option("--group", sa.group, "gln or gl4")->check(CLI::IsMember({"gln", "gl4"}));
  scan->add_option("--weyl", sa.weyl, "long or star (gln); long, star, blockswap or mixed (gl4)");
  scan->add_option("--p", sa.p, "Prime")->required();
  scan->add_option("--n", sa.n, "Rank parameter n (gln)")->check(CLI::PositiveNumber);
  scan->add_option("--r-budget", sa.r_budget, "Largest r_1 + ... + r_n")->check(CLI::NonNegativeNumber);
  scan->add_option("--psi", sa.psi, "Comma-separated psi (default all 1)");
  scan->add_option("--psi-prime", sa.psip, "Comma-separated psi' (default all 1)");
  scan->add_option("--out", sa.out_path, "Output file (default stdout)");
  scan->add_flag("--json", sa.json, "JSON rows instead of CSV");
  scan->add_option("--budget", sa.budget, "Term budget");

  std::string dweyl = "long", dparams;
  i64 dp = 0;
  auto* decompose = app.add_subcommand("decompose", "Bruhat decomposition of a coset representative");
  decompose->add_option("--weyl", dweyl, "long or star");
  decompose->add_option("--p", dp, "Prime")->required();
  decompose->add_option("--params", dparams, "Comma-separated c:m pairs in word order")->required();

  std::string cweyl = "long", cr;
  i64 cp = 0;
  auto* count = app.add_subcommand("count", "Strata and coset cardinalities");
  count->add_option("--weyl", cweyl, "long, star, blockswap or mixed");
  count->add_option("--p", cp, "Prime")->required();
  count->add_option("--r", cr, "Comma-separated exponents")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return kExitUsage;
  }

  try {
    if (compute->parsed()) return run_compute(ca, out);
    if (verify->parsed()) return run_verify(suite, fixture, out);
    if (scan->parsed()) return run_scan(sa, out);
    if (decompose->parsed()) return run_decompose(dweyl, dp, dparams, out);
    if (count->parsed()) return run_count(cweyl, cp, cr, out);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << " (raise --budget or KLOOSTERMAN_BUDGET)\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace kloost
