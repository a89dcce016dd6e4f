#pragma once

#include <Eigen/Core>
#include <nlohmann/json.hpp>

#include "kloost/modcore.hpp"

namespace kloost {

// Dense multiplicity arrays are refused beyond this many roots of unity.
inline constexpr i64 kMaxDenseLevel = 10'000'000;

// Per-unit-multiplicity rounding constant of eval_complex, see eps below.
inline constexpr double kRoundConstant = 8.0 * 2.220446049250313e-16;

struct ComplexValue {
  double re = 0.0;
  double im = 0.0;
  double eps = 0.0;

  double abs() const;
};

// Element of Z[zeta_{p^M}] stored as a multiplicity vector over zeta^t.
class CycloSum {
 public:
  using Vector = Eigen::Matrix<i64, Eigen::Dynamic, 1>;

  CycloSum(i64 p, int level);
  CycloSum(i64 p, int level, Vector mult, i64 term_count);

  static CycloSum constant(i64 p, int level, i64 k);

  i64 p() const { return p_; }
  int level() const { return level_; }
  i64 modulus() const { return mult_.size(); }
  const Vector& mult() const { return mult_; }
  i64 term_count() const { return terms_; }

  void add_root(i64 index, i64 count = 1) {
    mult_[index] += count;
    terms_ += count;
  }

  CycloSum embed(int level) const;
  CycloSum reduce() const;
  bool is_zero() const;
  bool equals_integer(i64 k) const;
  ComplexValue eval_complex() const;

  nlohmann::json to_json() const;
  static CycloSum from_json(const nlohmann::json& j);

  // Equality of canonical forms after level alignment.
  friend bool operator==(const CycloSum& a, const CycloSum& b);

 private:
  i64 p_;
  int level_;
  Vector mult_;
  i64 terms_ = 0;
};

CycloSum root_of_unity(FracExponent t, i64 p, int level);
CycloSum add(const CycloSum& a, const CycloSum& b);
CycloSum operator+(const CycloSum& a, const CycloSum& b);

// Shared guard: p^level as an array length.
i64 dense_length(i64 p, int level);

}  // namespace kloost
