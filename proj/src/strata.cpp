#include "kloost/strata.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace kloost {

std::string to_string(WeylElement w) {
  switch (w) {
    case WeylElement::LongElement: return "long";
    case WeylElement::Star: return "star";
    case WeylElement::Gl4BlockSwap: return "blockswap";
    case WeylElement::Gl4Mixed: return "mixed";
  }
  return "?";
}

WeylElement weyl_from_string(const std::string& s) {
  if (s == "long") return WeylElement::LongElement;
  if (s == "star") return WeylElement::Star;
  if (s == "blockswap") return WeylElement::Gl4BlockSwap;
  if (s == "mixed") return WeylElement::Gl4Mixed;
  throw InvalidArgument("unknown Weyl element '" + s + "'");
}

namespace {

Layout build_layout(WeylElement w, int n) {
  if (n < 1) throw InvalidArgument("n must be at least 1");
  Layout L{w, n, Support::FullTriangle, {}, {}, {}, {}, {}};
  auto add = [&L](int i, int j) { L.indices.push_back({i, j}); };
  auto pos = [&L](int i, int j) {
    auto it = std::find(L.indices.begin(), L.indices.end(), IndexPair{i, j});
    return static_cast<int>(it - L.indices.begin());
  };

  switch (w) {
    case WeylElement::LongElement:
      for (int i = 1; i <= n; ++i)
        for (int j = i; j <= n; ++j) add(i, j);
      for (int b = n; b >= 1; --b)
        for (int k = 1; k <= b; ++k) L.word.push_back(k);
      for (auto [i, j] : L.indices) {
        std::vector<int> r;
        for (int k = j; k <= n; ++k) r.push_back(pos(i, k));
        L.range.push_back(r);
      }
      break;
    case WeylElement::Star:
      L.support = Support::Hook;
      for (int j = 1; j <= n; ++j) add(1, j);
      for (int i = n; i >= 2; --i) add(i, n);
      for (int k = 1; k <= n; ++k) L.word.push_back(k);
      for (int k = n - 1; k >= 1; --k) L.word.push_back(k);
      for (auto [i, j] : L.indices) {
        std::vector<int> r;
        if (i == 1) {
          for (int k = j; k <= n; ++k) r.push_back(pos(1, k));
        } else {
          for (int k = 2; k <= i; ++k) r.push_back(pos(k, n));
        }
        L.range.push_back(r);
      }
      break;
    case WeylElement::Gl4BlockSwap:
      if (n != 3) throw InvalidArgument("GL(4) element requires n = 3");
      L.support = Support::BlockSwapSet;
      add(2, 2), add(1, 2), add(2, 3), add(1, 3);
      L.word = {2, 1, 3, 2};
      L.range = {{pos(1, 2), pos(2, 2), pos(2, 3)},
                 {pos(1, 2), pos(1, 3)},
                 {pos(1, 3), pos(2, 3)},
                 {pos(1, 3)}};
      break;
    case WeylElement::Gl4Mixed:
      if (n != 3) throw InvalidArgument("GL(4) element requires n = 3");
      L.support = Support::MixedSet;
      add(1, 1), add(1, 2), add(1, 3), add(2, 2), add(2, 3);
      L.word = {1, 2, 3, 1, 2};
      L.range = {{pos(1, 1), pos(1, 2), pos(1, 3)},
                 {pos(1, 2), pos(1, 3)},
                 {pos(1, 3)},
                 {pos(2, 2), pos(2, 3)},
                 {pos(2, 3)}};
      break;
  }

  OrderingSpec ord = OrderingSpec::of(w, n);
  for (IndexPair ij : ord.order) L.dfs_order.push_back(pos(ij.i, ij.j));
  std::vector<int> rm(L.indices.size());
  for (int k = 0; k < L.size(); ++k) rm[k] = k;
  std::sort(rm.begin(), rm.end(), [&L](int a, int b) { return L.indices[a] < L.indices[b]; });
  L.row_major = rm;
  return L;
}

}  // namespace

const Layout& Layout::of(WeylElement w, int n) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<Layout>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(static_cast<int>(w), n);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_unique<Layout>(build_layout(w, n))).first;
  }
  return *it->second;
}

int Layout::position(int i, int j) const {
  for (int k = 0; k < size(); ++k) {
    if (indices[k].i == i && indices[k].j == j) return k;
  }
  return -1;
}

OrderingSpec OrderingSpec::of(WeylElement w, int n) {
  OrderingSpec o;
  switch (w) {
    case WeylElement::LongElement:
      for (int i = 1; i <= n; ++i)
        for (int j = n; j >= i; --j) o.order.push_back({i, j});
      break;
    case WeylElement::Star:
      for (int j = n; j >= 1; --j) o.order.push_back({1, j});
      for (int i = 2; i <= n; ++i) o.order.push_back({i, n});
      break;
    case WeylElement::Gl4BlockSwap:
      o.order = {{1, 3}, {1, 2}, {2, 3}, {2, 2}};
      break;
    case WeylElement::Gl4Mixed:
      o.order = {{1, 3}, {1, 2}, {1, 1}, {2, 3}, {2, 2}};
      break;
  }
  return o;
}

int OrderingSpec::rank(IndexPair a) const {
  auto it = std::find(order.begin(), order.end(), a);
  if (it == order.end()) throw BadIndex("index not in ordering");
  return static_cast<int>(it - order.begin());
}

bool OrderingSpec::less(IndexPair a, IndexPair b) const { return rank(a) < rank(b); }

ExponentMatrix::ExponentMatrix(WeylElement w, int n)
    : layout_(&Layout::of(w, n)), m_(layout_->size(), 0) {}

ExponentMatrix::ExponentMatrix(WeylElement w, int n, std::vector<int> values)
    : layout_(&Layout::of(w, n)), m_(std::move(values)) {
  if (static_cast<int>(m_.size()) != layout_->size()) throw LengthMismatch("exponent count");
  for (int v : m_)
    if (v < 0) throw InvalidArgument("negative exponent");
}

int ExponentMatrix::operator()(int i, int j) const {
  int k = layout_->position(i, j);
  return k < 0 ? 0 : m_[k];
}

void ExponentMatrix::set(int i, int j, int v) {
  int k = layout_->position(i, j);
  if (k < 0) throw BadIndex("index off support");
  if (v < 0) throw InvalidArgument("negative exponent");
  m_[k] = v;
}

std::vector<int> ExponentMatrix::flattened() const {
  std::vector<int> out;
  for (int k : layout_->row_major) out.push_back(m_[k]);
  return out;
}

std::vector<int> ExponentMatrix::row_sums() const {
  std::vector<int> r(n(), 0);
  for (int k = 0; k < layout_->size(); ++k) {
    auto [i, j] = layout_->indices[k];
    for (int t = i; t <= j; ++t) r[t - 1] += m_[k];
  }
  return r;
}

bool ExponentMatrix::in_stratum(const std::vector<int>& r) const { return row_sums() == r; }

int ExponentMatrix::kappa() const {
  return static_cast<int>(std::count_if(m_.begin(), m_.end(), [](int v) { return v != 0; }));
}

std::string ExponentMatrix::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int k : layout_->row_major) {
    if (!first) os << ' ';
    first = false;
    os << 'm' << layout_->indices[k].i << layout_->indices[k].j << '=' << m_[k];
  }
  return os.str();
}

nlohmann::json ExponentMatrix::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  for (int k : layout_->row_major) {
    j[std::to_string(layout_->indices[k].i) + std::to_string(layout_->indices[k].j)] = m_[k];
  }
  return j;
}

int ModulusSpec::height() const {
  int h = 0;
  for (int x : r) h += x;
  return h;
}

i64 ModulusSpec::trivial_bound() const { return checked_pow(p, height()); }

std::vector<ExponentMatrix> enumerate_strata(WeylElement w, const std::vector<int>& r) {
  const int n = static_cast<int>(r.size());
  const Layout& L = Layout::of(w, n);
  for (int x : r)
    if (x < 0) throw InvalidArgument("r must be nonnegative");

  const int depth = L.size();
  // covered[d][k]: some position at DFS depth >= d has a root touching k.
  std::vector<std::vector<bool>> covered(depth + 1, std::vector<bool>(n + 1, false));
  for (int d = depth - 1; d >= 0; --d) {
    covered[d] = covered[d + 1];
    auto [i, j] = L.indices[L.dfs_order[d]];
    for (int k = i; k <= j; ++k) covered[d][k] = true;
  }

  std::vector<ExponentMatrix> out;
  std::vector<int> m(depth, 0);
  std::vector<int> rem(r.begin(), r.end());
  rem.insert(rem.begin(), 0);

  auto rec = [&](auto&& self, int d) -> void {
    for (int k = 1; k <= n; ++k)
      if (rem[k] != 0 && !covered[d][k]) return;
    if (d == depth) {
      out.emplace_back(w, n, m);
      return;
    }
    int pos = L.dfs_order[d];
    auto [i, j] = L.indices[pos];
    int cap = rem[i];
    for (int k = i; k <= j; ++k) cap = std::min(cap, rem[k]);
    for (int v = 0; v <= cap; ++v) {
      m[pos] = v;
      for (int k = i; k <= j; ++k) rem[k] -= v;
      self(self, d + 1);
      for (int k = i; k <= j; ++k) rem[k] += v;
    }
    m[pos] = 0;
  };
  rec(rec, 0);

  std::sort(out.begin(), out.end(), [](const ExponentMatrix& a, const ExponentMatrix& b) {
    return a.flattened() < b.flattened();
  });
  return out;
}

i64 coset_cardinality(const ExponentMatrix& m, i64 p) { return CosetSpace(m, p).cardinality(); }

i64 dr_count(const ExponentMatrix& m, const std::vector<int>& r, i64 p) {
  if (!m.in_stratum(r)) throw NotInStratum(m.to_string() + " does not solve the row sums");
  int ht = 0;
  for (int x : r) ht += x;
  int kappa = m.kappa();
  // p^ht (1 - 1/p)^kappa = p^(ht - kappa) (p - 1)^kappa; kappa <= ht here.
  return checked_mul(checked_pow(p, ht - kappa), checked_pow(p - 1, kappa));
}

i64 default_term_budget() {
  if (const char* env = std::getenv("KLOOSTERMAN_BUDGET")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 10'000'000;
}

i64 CosetPoint::operator()(int i, int j) const {
  int k = layout_->position(i, j);
  return k < 0 ? 1 : c_[k];
}

CosetSpace::CosetSpace(const ExponentMatrix& m, i64 p) : m_(m), p_(p) {
  if (!is_prime(static_cast<u64>(p))) throw NotPrime(std::to_string(p) + " is not prime");
  const Layout& L = m.layout();
  for (int k = 0; k < L.size(); ++k) {
    int e = 0;
    for (int q : L.range[k]) e += m.at(q);
    exps_.push_back(e);
    moduli_.push_back(checked_pow(p, e));
  }
}

i64 CosetSpace::cardinality() const {
  i64 n = 1;
  for (size_t k = 0; k < moduli_.size(); ++k) {
    i64 size = unit(static_cast<int>(k)) ? moduli_[k] / p_ * (p_ - 1) : moduli_[k];
    n = checked_mul(n, size);
  }
  return n;
}

void CosetSpace::check_budget(i64 budget) const {
  i64 n;
  try {
    n = cardinality();
  } catch (const Overflow&) {
    throw BudgetExceeded(INT64_MAX, budget);
  }
  if (n > budget) throw BudgetExceeded(n, budget);
}

std::vector<CosetPoint> CosetSpace::points(i64 budget) const {
  std::vector<CosetPoint> out;
  const Layout* L = &m_.layout();
  const size_t k = moduli_.size();
  for_each([&](const i64* c) { out.emplace_back(L, std::vector<i64>(c, c + k)); }, budget);
  return out;
}

std::vector<CosetPoint> iterate_cosets(const ExponentMatrix& m, i64 p, i64 budget) {
  return CosetSpace(m, p).points(budget);
}

}  // namespace kloost
