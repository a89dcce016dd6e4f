#include "kloost/bruhat.hpp"

#include <functional>
#include <map>

namespace kloost {

namespace {

// c and m lookups with the off-support convention.
struct ParamView {
  const Layout& layout;
  const std::vector<PadicParam>& params;

  int m(int i, int j) const {
    int k = layout.position(i, j);
    return k < 0 ? 0 : params[k].m;
  }
};

// A signed Laurent monomial in the c's times a power of p. Exponents are
// combined before the formal-zero rule is applied: the term vanishes only
// when an in-support index with m = 0 keeps a negative net exponent.
struct Monomial {
  int sign = 1;
  std::map<IndexPair, int> cexp;
  int pexp = 0;

  Monomial& c(int i, int j, int e = 1) {
    cexp[{i, j}] += e;
    return *this;
  }
  Monomial& inv(int i, int j) { return c(i, j, -1); }

  Rational value(const ParamView& v, i64 p) const {
    Rational x = p_power<Rational>(p, pexp) * sign;
    for (auto [ij, e] : cexp) {
      if (e == 0) continue;
      int k = v.layout.position(ij.i, ij.j);
      if (k < 0) continue;
      if (e < 0 && v.params[k].m == 0) return Rational(0);
      x *= p_power<Rational>(v.params[k].c, e);
    }
    return x;
  }
};

// Strictly increasing tuples of length q from [lo, hi].
void increasing(int lo, int hi, int q, std::vector<int>& cur,
                const std::function<void(const std::vector<int>&)>& f) {
  if (static_cast<int>(cur.size()) == q) return f(cur);
  int start = cur.empty() ? lo : cur.back() + 1;
  for (int v = start; v <= hi; ++v) {
    cur.push_back(v);
    increasing(lo, hi, q, cur, f);
    cur.pop_back();
  }
}

// Nondecreasing tuples of length q from [lo, hi].
void nondecreasing(int lo, int hi, int q, std::vector<int>& cur,
                   const std::function<void(const std::vector<int>&)>& f) {
  if (static_cast<int>(cur.size()) == q) return f(cur);
  int start = cur.empty() ? lo : cur.back();
  for (int v = start; v <= hi; ++v) {
    cur.push_back(v);
    nondecreasing(lo, hi, q, cur, f);
    cur.pop_back();
  }
}

RationalTriple closed_long(const ParamView& v, int n, i64 p) {
  const int d = n + 1;
  RationalTriple t{RationalMatrix::Identity(d, d), RationalMatrix::Zero(d, d),
                   RationalMatrix::Identity(d, d), {}};
  for (int i = 1; i <= d; ++i) {
    int e = 0;
    for (int k = 1; k < i; ++k) e += v.m(k, i - 1);
    for (int k = 1; k <= n; ++k) e -= v.m(i, k);
    int sign = (n + 1 - i) % 2 == 0 ? 1 : -1;
    t.N(i - 1, n + 1 - i) = p_power<Rational>(p, e) * sign;
    t.perm.push_back(n + 1 - i);
  }
  for (int i = 1; i <= d; ++i) {
    for (int j = i + 1; j <= d; ++j) {
      const int q = j - i;
      Rational sum(0);
      std::vector<int> cur;
      // L_ij: sum over 1 <= delta_1 < ... < delta_q <= j-1, delta_0 = 0.
      increasing(1, j - 1, q, cur, [&](const std::vector<int>& dl) {
        Monomial mono;
        int prev = 0;
        for (int k = 1; k <= q; ++k) {
          const int dk = dl[k - 1];
          mono.c(dk, i - 2 + k).inv(dk, i - 1 + k);
          for (int s = prev + 1; s <= dk - 1; ++s) mono.pexp += v.m(s, i - 2 + k);
          prev = dk;
        }
        for (int k = 1; k <= dl[q - 1]; ++k) mono.pexp -= v.m(k, j - 1);
        sum += mono.value(v, p);
      });
      t.L(i - 1, j - 1) = sum;

      // R_ij: sum over nondecreasing d_1..d_q in [max(n+1-i,1), n], d_{q+1} = n.
      sum = 0;
      cur.clear();
      nondecreasing(std::max(n + 1 - i, 1), n, q, cur, [&](const std::vector<int>& dd) {
        Monomial mono;
        std::vector<int> part(dd);
        part.push_back(n);
        for (int k = 1; k <= q; ++k) mono.c(n + 2 - i - k, part[k - 1]).inv(n + 3 - i - k, part[k - 1]);
        for (int k = part[0] + 1; k <= n; ++k) mono.pexp += v.m(n + 2 - i, k);
        for (int k = 1; k <= q; ++k)
          for (int s = part[k - 1]; s <= part[k]; ++s) mono.pexp -= v.m(n + 2 - i - k, s);
        sum += mono.value(v, p);
      });
      t.R(i - 1, j - 1) = sum;
    }
  }
  return t;
}

RationalTriple closed_star(const ParamView& v, int n, i64 p) {
  const int d = n + 1;
  RationalTriple t{RationalMatrix::Identity(d, d), RationalMatrix::Zero(d, d),
                   RationalMatrix::Identity(d, d), std::vector<int>(d)};
  auto val = [&](const Monomial& mono) { return mono.value(v, p); };
  auto msum = [&](auto&& f, int lo, int hi) {
    int s = 0;
    for (int k = lo; k <= hi; ++k) s += f(k);
    return s;
  };
  auto row1 = [&](int k) { return v.m(1, k); };
  auto coln = [&](int k) { return v.m(k, n); };

  t.N(0, n) = p_power<Rational>(p, -msum(row1, 1, n)) * (n % 2 == 0 ? 1 : -1);
  t.perm[0] = n;
  for (int i = 2; i <= n; ++i) {
    t.N(i - 1, i - 1) = -p_power<Rational>(p, v.m(1, i - 1) - v.m(i, n));
    t.perm[i - 1] = i - 1;
  }
  t.N(n, 0) = p_power<Rational>(p, msum(coln, 1, n));
  t.perm[n] = 0;

  for (int j = 2; j <= n; ++j) {
    Monomial mono;
    mono.sign = j % 2 == 0 ? 1 : -1;
    mono.inv(1, j - 1).pexp = -msum(row1, 1, j - 1);
    t.L(0, j - 1) = val(mono);
  }
  {
    Monomial mono;
    mono.inv(1, 1).inv(2, n).pexp = -msum(coln, 1, n);
    t.L(0, n) = val(mono);
  }
  for (int i = 2; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      const int pe = -msum(row1, i, j - 1);
      Monomial a, b;
      a.sign = b.sign = (j - i + 1) % 2 == 0 ? 1 : -1;
      a.c(1, i - 1).inv(1, j - 1).pexp = pe;
      b.c(1, i).c(i + 1, n).inv(1, j - 1).inv(i, n).pexp = v.m(1, i - 1) - v.m(i, n) + pe;
      t.L(i - 1, j - 1) = val(a) + val(b);
    }
    Monomial a, b;
    a.c(1, i - 1).inv(1, i).inv(i + 1, n).pexp = -v.m(1, n) - msum(coln, i + 1, n);
    b.inv(i, n).pexp = v.m(1, i - 1) - v.m(1, n) - msum(coln, i, n);
    t.L(i - 1, n) = val(a) + val(b);
  }

  for (int j = 2; j <= n; ++j) {
    Monomial mono;
    mono.c(j, n).pexp = -msum(coln, 2, j);
    t.R(0, j - 1) = val(mono);
  }
  {
    Monomial mono;
    mono.c(1, n).pexp = -msum(coln, 1, n);
    t.R(0, n) = val(mono);
  }
  for (int i = 2; i <= n; ++i) {
    Monomial a, b;
    a.sign = b.sign = (n - i) % 2 == 0 ? 1 : -1;
    a.c(1, i).c(i + 1, n).inv(i, n).pexp = -msum(row1, i, n);
    b.c(1, i - 1).pexp = v.m(i, n) - msum(row1, i - 1, n);
    t.R(i - 1, n) = val(a) + val(b);
  }
  return t;
}

}  // namespace

bool is_p_integral(const RationalMatrix& g, i64 p) {
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      boost::multiprecision::mpz_int den = boost::multiprecision::denominator(g(i, j));
      if (den % p == 0) return false;
    }
  }
  return true;
}

RationalTriple closed_form_triple(WeylElement w, int n, i64 p,
                                  const std::vector<PadicParam>& params) {
  const Layout& layout = Layout::of(w, n);
  if (static_cast<int>(params.size()) != layout.size())
    throw LengthMismatch("parameter count differs from the word length");
  ParamView v{layout, params};
  switch (w) {
    case WeylElement::LongElement: return closed_long(v, n, p);
    case WeylElement::Star:
      if (n < 2) throw InvalidArgument("the star element needs n >= 2");
      return closed_star(v, n, p);
    default: throw InvalidArgument("closed forms exist only for the long and star elements");
  }
}

std::vector<PadicParam> coset_representative_params(const ExponentMatrix& m,
                                                    const CosetPoint& point) {
  std::vector<PadicParam> out;
  for (int k = 0; k < m.layout().size(); ++k) out.push_back({point.values()[k], m.at(k)});
  return out;
}

RationalMatrix representative_matrix(const ExponentMatrix& m, const CosetPoint& point, i64 p) {
  return b_product<Rational>(m.layout().word, coset_representative_params(m, point), m.n(), p);
}

bool equivalent_representatives(const RationalMatrix& b1, const RationalMatrix& b2, i64 p) {
  RationalMatrix u = exact_inverse<Rational>(b1) * b2;
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    if (!(u(i, i) == Rational(1))) return false;
    for (Eigen::Index j = 0; j < i; ++j)
      if (!(u(i, j) == Rational(0))) return false;
  }
  return is_p_integral(u, p);
}

Rational bruhat_route_phase(const ExponentMatrix& m, const CosetPoint& point,
                            const CharacterPair& chars, i64 p) {
  const int n = m.n();
  RationalTriple t = bruhat_decompose<Rational>(representative_matrix(m, point, p));
  Rational x(0);
  for (int j = 0; j < n; ++j) {
    x += Rational(chars.psi[j]) * t.L(j, j + 1);
    x += Rational(chars.psi_prime[j]) * t.R(j, j + 1);
  }
  // Split the denominator as p^e * u and keep num * u^-1 mod p^e.
  boost::multiprecision::mpz_int num = boost::multiprecision::numerator(x);
  boost::multiprecision::mpz_int den = boost::multiprecision::denominator(x);
  boost::multiprecision::mpz_int pe = 1;
  while (den % p == 0) {
    den /= p;
    pe *= p;
  }
  if (pe == 1) return Rational(0);
  boost::multiprecision::mpz_int u_inv;
  mpz_invert(u_inv.backend().data(), den.backend().data(), pe.backend().data());
  boost::multiprecision::mpz_int r = num * u_inv % pe;
  if (r < 0) r += pe;
  return Rational(r) / Rational(pe);
}

std::string to_string(const Rational& x) { return x.str(); }

}  // namespace kloost
