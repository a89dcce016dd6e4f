#include "kloost/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace kloost {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", kScanDigits, x);
  return buf;
}

double max_factor(const std::vector<i64>& psi, i64 p) {
  double best = 1.0;
  for (i64 x : psi) {
    if (x == 0) return kInf;
    best = std::max(best, psi_p_factor(x, p).value());
  }
  return best;
}

template <class T>
std::string join(const std::vector<T>& v) {
  std::string s;
  for (size_t k = 0; k < v.size(); ++k) {
    if (k) s += ';';
    s += std::to_string(v[k]);
  }
  return s;
}

template <class T>
std::vector<T> split_list(const std::string& s) {
  std::vector<T> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) out.push_back(static_cast<T>(std::stoll(item)));
  return out;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  double x = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw InvalidArgument("bad number '" + s + "' in CSV");
  return x;
}

bool same(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

ScanRow make_row(std::string weyl, const ModulusSpec& spec, const CharacterPair& chars) {
  ScanRow row;
  row.weyl = std::move(weyl);
  row.p = spec.p;
  row.r = spec.r;
  row.psi = chars.psi;
  row.psi_prime = chars.psi_prime;
  row.trivial_bound = spec.trivial_bound();
  row.psi_factor = round_significant(max_factor(chars.psi, spec.p));
  row.psi_prime_factor = round_significant(max_factor(chars.psi_prime, spec.p));
  return row;
}

template <class Eval>
void fill_row(ScanRow& row, const ModulusSpec& spec, i64 budget, Eval&& eval) {
  std::optional<KloostermanResult> opt;
  try {
    opt.emplace(eval(spec, budget));
  } catch (const BudgetExceeded&) {
    row.skipped = true;
    row.abs_value = kNaN;
    row.ratio = kNaN;
    return;
  }
  KloostermanResult& res = *opt;
  if (!verify_trivial_bound(res, spec))
    throw Error("trivial bound violated at r = " + join(spec.r) + ", |value| = " +
                format_double(res.complex.abs()));
  const bool zero = res.exact.is_zero();
  const double a = zero ? 0.0 : res.complex.abs();
  row.abs_value = round_significant(a);
  const int h = spec.height();
  if (h == 0) {
    row.ratio = kNaN;
  } else if (zero) {
    row.ratio = -kInf;
  } else {
    row.ratio = round_significant(std::log(row.abs_value) / std::log(static_cast<double>(spec.p)) / h);
  }
  row.exact = std::move(res.exact);
}

}  // namespace

double round_significant(double x, int digits) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

int ScanRow::height() const { return std::accumulate(r.begin(), r.end(), 0); }

nlohmann::json ScanRow::to_json() const {
  auto num = [](double x) -> nlohmann::json {
    if (std::isfinite(x)) return x;
    return format_double(x);
  };
  nlohmann::json j{{"weyl", weyl},
                   {"p", p},
                   {"r", r},
                   {"psi", psi},
                   {"psi_prime", psi_prime},
                   {"abs_value", num(abs_value)},
                   {"trivial_bound", trivial_bound},
                   {"psi_factor", num(psi_factor)},
                   {"psi_prime_factor", num(psi_prime_factor)},
                   {"ratio", num(ratio)},
                   {"skipped", skipped}};
  if (exact) j["exact"] = exact->to_json();
  return j;
}

bool ScanRow::operator==(const ScanRow& o) const {
  return weyl == o.weyl && p == o.p && r == o.r && psi == o.psi && psi_prime == o.psi_prime &&
         same(abs_value, o.abs_value) && trivial_bound == o.trivial_bound &&
         same(psi_factor, o.psi_factor) && same(psi_prime_factor, o.psi_prime_factor) &&
         same(ratio, o.ratio) && skipped == o.skipped;
}

bool verify_trivial_bound(const KloostermanResult& result, const ModulusSpec& spec) {
  if (result.exact.is_zero()) return true;
  return result.complex.abs() <= static_cast<double>(spec.trivial_bound()) + result.complex.eps;
}

std::vector<std::vector<int>> r_vectors(int n, int r_budget) {
  if (n < 1) throw InvalidArgument("n must be positive");
  if (r_budget < 0) throw InvalidArgument("r budget must be nonnegative");
  std::vector<std::vector<int>> out;
  std::vector<int> cur(n, 0);
  // Odometer over [0, r_budget]^n, pruned by the running sum.
  while (true) {
    if (std::accumulate(cur.begin(), cur.end(), 0) <= r_budget) out.push_back(cur);
    int k = n - 1;
    for (; k >= 0; --k) {
      if (++cur[k] <= r_budget) break;
      cur[k] = 0;
    }
    if (k < 0) break;
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    int sa = std::accumulate(a.begin(), a.end(), 0), sb = std::accumulate(b.begin(), b.end(), 0);
    return sa != sb ? sa < sb : a < b;
  });
  return out;
}

void sort_rows(std::vector<ScanRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const ScanRow& a, const ScanRow& b) {
    if (a.height() != b.height()) return a.height() < b.height();
    if (a.r != b.r) return a.r < b.r;
    if (a.weyl != b.weyl) return a.weyl < b.weyl;
    if (a.p != b.p) return a.p < b.p;
    if (a.psi != b.psi) return a.psi < b.psi;
    return a.psi_prime < b.psi_prime;
  });
}

std::vector<ScanRow> delta_scan(WeylElement w, i64 p, int n, int r_budget,
                                const CharacterPair& chars, i64 budget) {
  if (w != WeylElement::LongElement && w != WeylElement::Star)
    throw InvalidArgument("GL(n+1) scans cover the long and star elements");
  if (chars.n() != n || static_cast<int>(chars.psi_prime.size()) != n)
    throw LengthMismatch("character length differs from n");
  std::vector<ScanRow> rows;
  for (const auto& r : r_vectors(n, r_budget)) {
    ModulusSpec spec{p, r};
    ScanRow row = make_row(to_string(w), spec, chars);
    fill_row(row, spec, budget, [&](const ModulusSpec& s, i64 b) {
      return w == WeylElement::LongElement ? kl_long(s, chars, b) : kl_star(s, chars, b);
    });
    rows.push_back(std::move(row));
  }
  sort_rows(rows);
  return rows;
}

std::vector<ScanRow> delta_scan(const Gl4Element& w, i64 p, int r_budget,
                                const CharacterPair& chars, i64 budget) {
  std::string tag = "gl4-" + to_string(w.tag) + (w.dual ? "-dual" : "");
  std::vector<ScanRow> rows;
  for (const auto& r : r_vectors(3, r_budget)) {
    ModulusSpec spec{p, r};
    ScanRow row = make_row(tag, spec, chars);
    fill_row(row, spec, budget,
             [&](const ModulusSpec& s, i64 b) { return gl4_full(w, s, chars, b); });
    rows.push_back(std::move(row));
  }
  sort_rows(rows);
  return rows;
}

void write_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << "weyl,p,r,psi,psi_prime,abs_value,trivial_bound,psi_factor,psi_prime_factor,ratio,"
        "skipped\n";
  for (const auto& row : rows) {
    os << row.weyl << ',' << row.p << ',' << join(row.r) << ',' << join(row.psi) << ','
       << join(row.psi_prime) << ',' << format_double(row.abs_value) << ',' << row.trivial_bound
       << ',' << format_double(row.psi_factor) << ',' << format_double(row.psi_prime_factor)
       << ',' << format_double(row.ratio) << ',' << (row.skipped ? 1 : 0) << '\n';
  }
}

std::vector<ScanRow> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidArgument("empty CSV");
  std::vector<ScanRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != 11) throw InvalidArgument("CSV row has " + std::to_string(f.size()) + " fields");
    ScanRow row;
    row.weyl = f[0];
    row.p = std::stoll(f[1]);
    row.r = split_list<int>(f[2]);
    row.psi = split_list<i64>(f[3]);
    row.psi_prime = split_list<i64>(f[4]);
    row.abs_value = parse_double(f[5]);
    row.trivial_bound = std::stoll(f[6]);
    row.psi_factor = parse_double(f[7]);
    row.psi_prime_factor = parse_double(f[8]);
    row.ratio = parse_double(f[9]);
    row.skipped = f[10] == "1";
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace kloost
