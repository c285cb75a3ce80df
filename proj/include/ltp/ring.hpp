#pragma once

#include <concepts>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "ltp/error.hpp"
#include "ltp/fq.hpp"
#include "ltp/ol.hpp"

namespace ltp {

using Rng = std::mt19937_64;

// Coefficient rings for Witt vectors and series. Every ring is an O_L-algebra
// through from_ol, and equality is always equality at joint precision.
template <class R>
concept CommRing = requires(const R& r, const typename R::Elem& a, const typename R::Elem& b, const OLApprox& c,
                            int64_t n) {
  { r.zero() } -> std::convertible_to<typename R::Elem>;
  { r.one() } -> std::convertible_to<typename R::Elem>;
  { r.from_int(n) } -> std::convertible_to<typename R::Elem>;
  { r.from_ol(c) } -> std::convertible_to<typename R::Elem>;
  { r.add(a, b) } -> std::convertible_to<typename R::Elem>;
  { r.sub(a, b) } -> std::convertible_to<typename R::Elem>;
  { r.neg(a) } -> std::convertible_to<typename R::Elem>;
  { r.mul(a, b) } -> std::convertible_to<typename R::Elem>;
  { r.eq(a, b) } -> std::convertible_to<bool>;
  { r.is_zero(a) } -> std::convertible_to<bool>;
  { r.str(a) } -> std::convertible_to<std::string>;
  { r.ol() } -> std::convertible_to<const OLField*>;
};

// A designated lift of the q-power Frobenius.
template <class R>
concept FrobeniusRing = CommRing<R> && requires(const R& r, const typename R::Elem& a) {
  { r.frobenius(a) } -> std::convertible_to<typename R::Elem>;
};

// Exact division by pi (pi-torsion-free rings).
template <class R>
concept PiDivisible = CommRing<R> && requires(const R& r, const typename R::Elem& a) {
  { r.div_pi(a) } -> std::convertible_to<typename R::Elem>;
};

template <class R>
concept SampledRing = CommRing<R> && requires(const R& r, Rng& g) {
  { r.random(g) } -> std::convertible_to<typename R::Elem>;
};

template <CommRing R>
typename R::Elem ring_pow(const R& r, typename R::Elem a, uint64_t n) {
  typename R::Elem acc = r.one();
  for (; n; n >>= 1) {
    if (n & 1) acc = r.mul(acc, a);
    if (n > 1) a = r.mul(a, a);
  }
  return acc;
}

template <CommRing R>
typename R::Elem ring_scale(const R& r, const OLApprox& c, const typename R::Elem& a) {
  return r.mul(r.from_ol(c), a);
}

inline int64_t residue_q(const OLField* F) { return F->q(); }

// Precision (in powers of pi) to which O_L-coefficients matter in r.
template <class R>
int coeff_precision(const R& r) {
  if constexpr (requires { r.coeff_precision(); }) return r.coeff_precision();
  else return 1;
}

// O_L modulo pi^P. The q-Frobenius is the identity on O_L.
struct OLRing {
  using Elem = OLApprox;
  const OLField* F = nullptr;
  int P = 1;

  OLRing() = default;
  OLRing(const OLField* f, int prec) : F(f), P(prec) {}

  Elem zero() const { return OLApprox::zero(F, P); }
  Elem one() const { return OLApprox::from_int(F, 1, P); }
  Elem from_int(int64_t n) const { return OLApprox::from_int(F, n, P); }
  Elem from_ol(const OLApprox& c) const { return c.with_prec(P); }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  bool eq(const Elem& a, const Elem& b) const { return a.equals(b); }
  bool is_zero(const Elem& a) const { return a.is_zero(); }
  std::string str(const Elem& a) const { return a.str(); }
  const OLField* ol() const { return F; }
  Elem frobenius(const Elem& a) const { return a; }
  Elem div_pi(const Elem& a) const { return a.div_pi(1); }
  bool is_unit(const Elem& a) const { return a.is_unit(); }
  Elem inv(const Elem& a) const { return a.inverse(); }
  int prec_of(const Elem& a) const { return a.prec(); }
  int coeff_precision() const { return P; }
  Elem random(Rng& g) const {
    std::vector<int64_t> d(F->ef());
    for (auto& v : d) v = int64_t(g() % uint64_t(F->pk(F->digits_needed(P, 0))));
    return OLApprox::make(F, d, P);
  }
  bool operator==(const OLRing& o) const { return F == o.F && P == o.P; }
};

// F_{q^m} as an O_L-algebra through O_L -> F_q -> F_{q^m}.
struct FqRing {
  using Elem = FqField::E;
  const OLField* F = nullptr;
  std::shared_ptr<const FqField> k;
  std::vector<Elem> x_powers;  // images of x^j, j < f

  static FqRing make(const OLField* F, int m = 1);

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(int64_t n) const { return k->from_int(n); }
  Elem from_ol(const OLApprox& c) const {
    if (c.prec() < 1) return 0;
    std::vector<int> r = c.residue();
    Elem acc = 0;
    for (size_t j = 0; j < r.size(); ++j) acc = k->add(acc, k->mul(k->from_int(r[j]), x_powers[j]));
    return acc;
  }
  Elem add(Elem a, Elem b) const { return k->add(a, b); }
  Elem sub(Elem a, Elem b) const { return k->sub(a, b); }
  Elem neg(Elem a) const { return k->neg(a); }
  Elem mul(Elem a, Elem b) const { return k->mul(a, b); }
  bool eq(Elem a, Elem b) const { return a == b; }
  bool is_zero(Elem a) const { return a == 0; }
  std::string str(Elem a) const { return k->str(a); }
  const OLField* ol() const { return F; }
  bool is_unit(Elem a) const { return a != 0; }
  Elem inv(Elem a) const { return k->inv(a); }
  Elem random(Rng& g) const { return Elem(g() % uint64_t(k->q())); }
  bool operator==(const FqRing& o) const { return F == o.F && k == o.k; }
};

// Characteristic polynomial det(X - A), coefficients from X^n down to X^0,
// by the division-free Berkowitz recursion.
template <CommRing R>
std::vector<typename R::Elem> charpoly(const R& r, const std::vector<std::vector<typename R::Elem>>& A) {
  using E = typename R::Elem;
  int n = int(A.size());
  std::vector<E> v = {r.one()};
  for (int k = 0; k < n; ++k) {
    // Leading (k+1)x(k+1) block: [[A_k, C], [R, a]].
    std::vector<E> t = {r.one(), r.neg(A[k][k])};
    std::vector<E> col(k);
    for (int i = 0; i < k; ++i) col[i] = A[i][k];
    for (int j = 0; j < k; ++j) {
      E s = r.zero();
      for (int i = 0; i < k; ++i) s = r.add(s, r.mul(A[k][i], col[i]));
      t.push_back(r.neg(s));
      std::vector<E> nc(k, r.zero());
      for (int i = 0; i < k; ++i)
        for (int l = 0; l < k; ++l) nc[i] = r.add(nc[i], r.mul(A[i][l], col[l]));
      col = nc;
    }
    std::vector<E> nv(k + 2, r.zero());
    for (int i = 0; i < k + 2; ++i)
      for (int j = 0; j <= std::min(i, k); ++j)
        if (i - j < int(t.size())) nv[i] = r.add(nv[i], r.mul(t[i - j], v[j]));
    v = nv;
  }
  return v;
}

}  // namespace ltp
