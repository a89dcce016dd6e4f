#include "kloost/cyclosum.hpp"

#include <cmath>
#include <numbers>

namespace kloost {

double ComplexValue::abs() const { return std::hypot(re, im); }

i64 dense_length(i64 p, int level) {
  if (level < 0) throw InvalidArgument("negative level");
  i64 q = 1;
  for (int i = 0; i < level; ++i) {
    q = checked_mul(q, p);
    if (q > kMaxDenseLevel) {
      throw LevelTooLarge("p^" + std::to_string(level) + " exceeds the dense limit " +
                          std::to_string(kMaxDenseLevel) + "; shrink r");
    }
  }
  return q;
}

CycloSum::CycloSum(i64 p, int level)
    : p_(p), level_(level), mult_(Vector::Zero(dense_length(p, level))) {
  if (!is_prime(static_cast<u64>(p))) throw NotPrime(std::to_string(p) + " is not prime");
}

CycloSum::CycloSum(i64 p, int level, Vector mult, i64 term_count)
    : p_(p), level_(level), mult_(std::move(mult)), terms_(term_count) {
  if (mult_.size() != dense_length(p, level)) throw LengthMismatch("multiplicity length");
}

CycloSum CycloSum::constant(i64 p, int level, i64 k) {
  CycloSum s(p, level);
  s.add_root(0, k);
  return s;
}

CycloSum CycloSum::embed(int level) const {
  if (level < level_) throw LevelTooSmall("cannot embed into a lower level");
  if (level == level_) return *this;
  CycloSum out(p_, level);
  i64 step = out.modulus() / modulus();
  for (i64 t = 0; t < modulus(); ++t) out.mult_[t * step] = mult_[t];
  out.terms_ = terms_;
  return out;
}

// Uses sum_{j<p} zeta^(k + j p^(M-1)) = 0 to clear the top block.
CycloSum CycloSum::reduce() const {
  CycloSum out = *this;
  if (level_ == 0) return out;
  i64 block = modulus() / p_;
  i64 top = (p_ - 1) * block;
  for (i64 k = 0; k < block; ++k) {
    i64 t = out.mult_[top + k];
    if (t == 0) continue;
    for (i64 j = 0; j < p_; ++j) out.mult_[k + j * block] -= t;
  }
  return out;
}

bool CycloSum::is_zero() const { return reduce().mult_.isZero(); }

bool CycloSum::equals_integer(i64 k) const {
  CycloSum r = reduce();
  r.mult_[0] -= k;
  return r.mult_.isZero();
}

// Each root carries about one ulp of table error and the running sum adds
// one rounding per nonzero entry, so eps scales with sum |mult| and the
// number of nonzero entries.
ComplexValue CycloSum::eval_complex() const {
  ComplexValue v;
  double weight = 0.0;
  i64 nnz = 0;
  const double q = static_cast<double>(modulus());
  for (i64 t = 0; t < modulus(); ++t) {
    i64 c = mult_[t];
    if (c == 0) continue;
    double angle = 2.0 * std::numbers::pi * static_cast<double>(t) / q;
    v.re += static_cast<double>(c) * std::cos(angle);
    v.im += static_cast<double>(c) * std::sin(angle);
    weight += std::fabs(static_cast<double>(c));
    ++nnz;
  }
  v.eps = weight * kRoundConstant * static_cast<double>(nnz + 2);
  return v;
}

nlohmann::json CycloSum::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  CycloSum r = reduce();
  for (i64 t = 0; t < modulus(); ++t) {
    if (r.mult_[t] != 0) terms.push_back({t, r.mult_[t]});
  }
  return {{"p", p_}, {"M", level_}, {"terms", terms}, {"term_count", terms_}};
}

CycloSum CycloSum::from_json(const nlohmann::json& j) {
  CycloSum s(j.at("p").get<i64>(), j.at("M").get<int>());
  for (const auto& e : j.at("terms")) s.mult_[e.at(0).get<i64>()] += e.at(1).get<i64>();
  s.terms_ = j.value("term_count", i64{0});
  return s;
}

bool operator==(const CycloSum& a, const CycloSum& b) {
  if (a.p_ != b.p_) throw PrimeMismatch("comparing sums over different primes");
  int level = std::max(a.level_, b.level_);
  return (a.embed(level).reduce().mult_ - b.embed(level).reduce().mult_).isZero();
}

CycloSum root_of_unity(FracExponent t, i64 p, int level) {
  CycloSum s(p, level);
  s.add_root(t.embed(p, level));
  return s;
}

CycloSum add(const CycloSum& a, const CycloSum& b) {
  if (a.p() != b.p()) throw PrimeMismatch("adding sums over different primes");
  int level = std::max(a.level(), b.level());
  CycloSum x = a.embed(level);
  CycloSum y = b.embed(level);
  return CycloSum(a.p(), level, x.mult() + y.mult(), x.term_count() + y.term_count());
}

CycloSum operator+(const CycloSum& a, const CycloSum& b) { return add(a, b); }

}  // namespace kloost
