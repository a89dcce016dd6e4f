#pragma once

#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include "kloost/klsums.hpp"
#include "kloost/strata.hpp"

namespace kloost {

using Rational =
    boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                  boost::multiprecision::et_off>;

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using RationalMatrix = Mat<Rational>;

// a = c p^-m; for m = 0 the inverse of c is the formal zero.
struct PadicParam {
  i64 c = 0;
  int m = 0;
};

template <class Scalar>
struct BruhatTriple {
  Mat<Scalar> L, N, R;
  // perm[i] is the column of the nonzero entry of N in row i.
  std::vector<int> perm;
};

template <class Scalar>
Scalar p_power(i64 p, int e) {
  Scalar x(1);
  for (int k = 0; k < (e < 0 ? -e : e); ++k) x *= Scalar(p);
  return e < 0 ? Scalar(1) / x : x;
}

template <class Scalar>
bool exact_equal(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == b(i, j))) return false;
  return true;
}

// 2x2 block at rows/columns (beta, beta+1); s is represented by
// [[0,-1],[1,0]], so m >= 1 gives [[1/c, 0],[p^m, c]] and m = 0 gives
// [[0,-1],[1,c]].
template <class Scalar>
Mat<Scalar> b_beta(int beta, const PadicParam& a, int n, i64 p) {
  if (beta < 1 || beta > n) throw BadIndex("beta index " + std::to_string(beta) + " out of range");
  if (a.m < 0) throw InvalidArgument("negative exponent");
  if (a.m > 0 && a.c % p == 0) throw NotAUnit("c must be a unit when m > 0");
  Mat<Scalar> g = Mat<Scalar>::Identity(n + 1, n + 1);
  const int i = beta - 1;
  if (a.m == 0) {
    g(i, i) = Scalar(0);
    g(i, i + 1) = Scalar(-1);
    g(i + 1, i) = Scalar(1);
    g(i + 1, i + 1) = Scalar(a.c);
  } else {
    g(i, i) = Scalar(1) / Scalar(a.c);
    g(i, i + 1) = Scalar(0);
    g(i + 1, i) = p_power<Scalar>(p, a.m);
    g(i + 1, i + 1) = Scalar(a.c);
  }
  return g;
}

template <class Scalar>
Mat<Scalar> b_product(const std::vector<int>& word, const std::vector<PadicParam>& params, int n,
                      i64 p) {
  if (word.size() != params.size()) throw LengthMismatch("word and parameter lengths differ");
  Mat<Scalar> g = Mat<Scalar>::Identity(n + 1, n + 1);
  for (size_t k = 0; k < word.size(); ++k) g = g * b_beta<Scalar>(word[k], params[k], n, p);
  return g;
}

// Exact rank by Gaussian elimination on a copy.
template <class Scalar>
int exact_rank(Mat<Scalar> a) {
  int rank = 0;
  for (Eigen::Index col = 0; col < a.cols() && rank < a.rows(); ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = rank; r < a.rows(); ++r) {
      if (!(a(r, col) == Scalar(0))) {
        piv = r;
        break;
      }
    }
    if (piv < 0) continue;
    a.row(piv).swap(a.row(rank));
    for (Eigen::Index r = rank + 1; r < a.rows(); ++r) {
      if (a(r, col) == Scalar(0)) continue;
      Scalar f = a(r, col) / a(rank, col);
      for (Eigen::Index c = col; c < a.cols(); ++c) a(r, c) -= f * a(rank, c);
    }
    ++rank;
  }
  return rank;
}

template <class Scalar>
Mat<Scalar> exact_inverse(const Mat<Scalar>& g) {
  const Eigen::Index d = g.rows();
  Mat<Scalar> a = g, inv = Mat<Scalar>::Identity(d, d);
  for (Eigen::Index col = 0; col < d; ++col) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = col; r < d; ++r) {
      if (!(a(r, col) == Scalar(0))) {
        piv = r;
        break;
      }
    }
    if (piv < 0) throw SingularMatrix("matrix is singular");
    a.row(piv).swap(a.row(col));
    inv.row(piv).swap(inv.row(col));
    Scalar s = Scalar(1) / a(col, col);
    a.row(col) *= s;
    inv.row(col) *= s;
    for (Eigen::Index r = 0; r < d; ++r) {
      if (r == col || a(r, col) == Scalar(0)) continue;
      Scalar f = a(r, col);
      a.row(r) -= f * a.row(col);
      inv.row(r) -= f * inv.row(col);
    }
  }
  return inv;
}

// Permutation of g from ranks of its lower-left blocks: row i maps to the
// first column j where the block rows i.. , columns ..j gains rank over
// rows i+1.. .
template <class Scalar>
std::vector<int> bruhat_permutation(const Mat<Scalar>& g) {
  const int d = static_cast<int>(g.rows());
  auto r = [&](int i, int j) {
    return i >= d ? 0 : exact_rank<Scalar>(g.block(i, 0, d - i, j + 1));
  };
  std::vector<int> perm(d, -1);
  for (int i = d - 1; i >= 0; --i) {
    for (int j = 0; j < d; ++j) {
      if (r(i, j) - r(i + 1, j) == 1) {
        perm[i] = j;
        break;
      }
    }
  }
  return perm;
}

// g = L N R with L, R upper unitriangular and N monomial; R is normalised so
// the factorisation is unique.
template <class Scalar>
BruhatTriple<Scalar> bruhat_decompose(const Mat<Scalar>& g) {
  const Eigen::Index d = g.rows();
  if (g.cols() != d) throw LengthMismatch("matrix is not square");
  if (exact_rank<Scalar>(g) != d) throw SingularMatrix("matrix is singular");
  BruhatTriple<Scalar> t;
  t.perm = bruhat_permutation<Scalar>(g);

  Mat<Scalar> m = g, linv = Mat<Scalar>::Identity(d, d);
  for (Eigen::Index i = d - 1; i >= 0; --i) {
    Eigen::Index j = 0;
    while (m(i, j) == Scalar(0)) ++j;
    if (j != t.perm[i]) throw DegeneratePattern("pivot disagrees with the rank pattern");
    for (Eigen::Index k = 0; k < i; ++k) {
      if (m(k, j) == Scalar(0)) continue;
      Scalar f = m(k, j) / m(i, j);
      m.row(k) -= f * m.row(i);
      linv.row(k) -= f * linv.row(i);
    }
  }
  t.N = Mat<Scalar>::Zero(d, d);
  t.R = Mat<Scalar>::Identity(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const int j = t.perm[i];
    t.N(i, j) = m(i, j);
    t.R.row(j) = m.row(i) / m(i, j);
  }
  t.L = exact_inverse<Scalar>(linv);
  if (!exact_equal<Scalar>(Mat<Scalar>(t.L * t.N * t.R), g))
    throw DegeneratePattern("factorisation does not multiply back");
  return t;
}

using RationalTriple = BruhatTriple<Rational>;

bool is_p_integral(const RationalMatrix& g, i64 p);

// The triple assembled from the printed entry formulas.
RationalTriple closed_form_triple(WeylElement w, int n, i64 p,
                                  const std::vector<PadicParam>& params);

std::vector<PadicParam> coset_representative_params(const ExponentMatrix& m,
                                                    const CosetPoint& point);

RationalMatrix representative_matrix(const ExponentMatrix& m, const CosetPoint& point, i64 p);

// True when b2 = b1 u for an upper unitriangular p-integral u.
bool equivalent_representatives(const RationalMatrix& b1, const RationalMatrix& b2, i64 p);

// psi . superdiag(L) + psi' . superdiag(R) of the decomposition of the
// representative, reduced to its p-adic fractional part in [0, 1).
Rational bruhat_route_phase(const ExponentMatrix& m, const CosetPoint& point,
                            const CharacterPair& chars, i64 p);

std::string to_string(const Rational& x);

}  // namespace kloost
