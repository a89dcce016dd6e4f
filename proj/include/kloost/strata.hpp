#pragma once

#include <compare>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kloost/modcore.hpp"

namespace kloost {

enum class WeylElement { LongElement, Star, Gl4BlockSwap, Gl4Mixed };
enum class Support { FullTriangle, Hook, BlockSwapSet, MixedSet };

std::string to_string(WeylElement w);
WeylElement weyl_from_string(const std::string& s);

struct IndexPair {
  int i = 0;
  int j = 0;
  auto operator<=>(const IndexPair&) const = default;
};

// Per-family index data. Positions refer to the parameter order of the
// reduced word, which is also the storage order of ExponentMatrix.
struct Layout {
  WeylElement weyl;
  int n;
  Support support;
  std::vector<IndexPair> indices;
  std::vector<int> word;
  // Positions whose exponents sum to the modulus exponent of each c.
  std::vector<std::vector<int>> range;
  std::vector<int> dfs_order;
  std::vector<int> row_major;

  static const Layout& of(WeylElement w, int n);

  int size() const { return static_cast<int>(indices.size()); }
  int position(int i, int j) const;
};

// Total order on index pairs used by the bound argument and the DFS.
struct OrderingSpec {
  std::vector<IndexPair> order;

  static OrderingSpec of(WeylElement w, int n);
  bool less(IndexPair a, IndexPair b) const;
  int rank(IndexPair a) const;
};

class ExponentMatrix {
 public:
  ExponentMatrix(WeylElement w, int n);
  ExponentMatrix(WeylElement w, int n, std::vector<int> values);

  const Layout& layout() const { return *layout_; }
  WeylElement weyl() const { return layout_->weyl; }
  Support support() const { return layout_->support; }
  int n() const { return layout_->n; }

  // Zero off the support, including i > j.
  int operator()(int i, int j) const;
  int at(int pos) const { return m_[pos]; }
  void set(int i, int j, int v);
  const std::vector<int>& values() const { return m_; }

  std::vector<int> flattened() const;
  std::vector<int> row_sums() const;
  bool in_stratum(const std::vector<int>& r) const;
  int kappa() const;

  std::string to_string() const;
  nlohmann::json to_json() const;

  bool operator==(const ExponentMatrix& o) const {
    return layout_ == o.layout_ && m_ == o.m_;
  }

 private:
  const Layout* layout_;
  std::vector<int> m_;
};

struct ModulusSpec {
  i64 p;
  std::vector<int> r;

  int n() const { return static_cast<int>(r.size()); }
  int height() const;
  // prod p^{r_k}, the trivial bound.
  i64 trivial_bound() const;
};

std::vector<ExponentMatrix> enumerate_strata(WeylElement w, const std::vector<int>& r);

i64 coset_cardinality(const ExponentMatrix& m, i64 p);
i64 dr_count(const ExponentMatrix& m, const std::vector<int>& r, i64 p);

// Reads KLOOSTERMAN_BUDGET, falling back to 10^7.
i64 default_term_budget();

class CosetPoint {
 public:
  CosetPoint(const Layout* layout, std::vector<i64> values)
      : layout_(layout), c_(std::move(values)) {}

  // Off-support indices read as 1.
  i64 operator()(int i, int j) const;
  const std::vector<i64>& values() const { return c_; }
  bool operator==(const CosetPoint& o) const { return c_ == o.c_; }

 private:
  const Layout* layout_;
  std::vector<i64> c_;
};

// The coset set C_w(m) at prime p.
class CosetSpace {
 public:
  CosetSpace(const ExponentMatrix& m, i64 p);

  const ExponentMatrix& stratum() const { return m_; }
  i64 p() const { return p_; }
  const std::vector<i64>& moduli() const { return moduli_; }
  const std::vector<int>& range_exponents() const { return exps_; }
  bool unit(int pos) const { return m_.at(pos) > 0; }
  i64 cardinality() const;

  void check_budget(i64 budget) const;

  // Odometer over all points; f receives a pointer into the current tuple.
  template <class F>
  void for_each(F&& f, i64 budget) const {
    check_budget(budget);
    const int k = static_cast<int>(moduli_.size());
    std::vector<i64> c(k, 0);
    for (int i = 0; i < k; ++i) c[i] = first(i);
    while (true) {
      f(static_cast<const i64*>(c.data()));
      int i = k - 1;
      for (; i >= 0; --i) {
        c[i] = next(i, c[i]);
        if (c[i] < moduli_[i]) break;
        c[i] = first(i);
      }
      if (i < 0) return;
    }
  }

  std::vector<CosetPoint> points(i64 budget) const;

 private:
  i64 first(int i) const { return unit(i) ? 1 : 0; }
  i64 next(int i, i64 v) const {
    ++v;
    if (unit(i) && v % p_ == 0) ++v;
    return v;
  }

  ExponentMatrix m_;
  i64 p_;
  std::vector<int> exps_;
  std::vector<i64> moduli_;
};

std::vector<CosetPoint> iterate_cosets(const ExponentMatrix& m, i64 p, i64 budget);

}  // namespace kloost
