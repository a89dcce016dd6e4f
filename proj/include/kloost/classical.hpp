#pragma once

#include <cstdint>
#include <vector>

#include "kloost/cyclosum.hpp"

namespace kloost {

// Element of Z[zeta_c] for arbitrary conductor c, no canonical form.
class RootSum {
 public:
  explicit RootSum(i64 conductor);

  i64 conductor() const { return static_cast<i64>(mult_.size()); }
  const std::vector<i64>& mult() const { return mult_; }
  void add_root(i64 index, i64 count = 1) { mult_[index] += count; }

  ComplexValue eval_complex() const;
  // Exact conversion when the conductor is p^k.
  CycloSum to_cyclo(i64 p) const;

 private:
  std::vector<i64> mult_;
};

// Units mod c with inverses and a root table, for repeated classical sums.
class ClassicalSumTable {
 public:
  explicit ClassicalSumTable(i64 c);

  i64 modulus() const { return c_; }
  RootSum evaluate(i64 m, i64 m_prime) const;
  double evaluate_abs(i64 m, i64 m_prime) const;

 private:
  i64 c_;
  std::vector<i64> units_;
  std::vector<i64> inverses_;
  std::vector<double> cos_, sin_;
};

RootSum classical_sum(i64 m, i64 m_prime, i64 c);
double weil_bound(i64 m, i64 m_prime, i64 c);
i64 divisor_count(i64 c);
RootSum hyper_kloosterman(i64 a, i64 c, int rank);

struct Gl3Params {
  i64 m1, m2, n1, n2;
  i64 c1, c2;
};

// Valid (B1, C1, B2, C2) tuples of the GL(3) sum reduced to the two phase
// coefficients, so character quadruples can be evaluated cheaply.
class Gl3KloostermanSet {
 public:
  Gl3KloostermanSet(i64 c1, i64 c2, std::uint64_t seed = 7,
                    i64 budget = 100'000'000);

  i64 c1() const { return c1_; }
  i64 c2() const { return c2_; }
  size_t size() const { return terms_.size(); }

  RootSum evaluate(i64 m1, i64 m2, i64 n1, i64 n2) const;

 private:
  struct Term {
    i64 b1, x1, b2, x2;
  };
  i64 c1_, c2_;
  std::vector<Term> terms_;
};

RootSum bfg_gl3_sum(const Gl3Params& params, i64 budget = 100'000'000);

}  // namespace kloost
