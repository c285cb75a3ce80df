#pragma once

#include <algorithm>
#include <array>
#include <memory>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "ltp/ring.hpp"

namespace ltp {

// Truncated power or Laurent series. c[i] is the coefficient of T^(lowest+i);
// coefficients are known for degrees < N, so c.size() == N - lowest.
template <class E>
struct Series {
  int lowest = 0;
  int N = 0;
  std::vector<E> c;
};

template <class R>
std::string coeff_repr(const R& r, const typename R::Elem& a) {
  if constexpr (requires { r.repr(a); }) return r.repr(a);
  else if constexpr (std::is_same_v<typename R::Elem, OLApprox>) return a.repr();
  else return r.str(a);
}

template <CommRing R>
struct SeriesRing {
  using Coeff = typename R::Elem;
  using Elem = Series<Coeff>;

  R base;
  int N = 10;
  // Image of T under the designated Frobenius lift; null when there is none.
  std::shared_ptr<const Elem> frob_T;

  SeriesRing() = default;
  SeriesRing(R b, int n) : base(std::move(b)), N(n) {}

  Elem make(int lowest, int n) const {
    Elem s;
    s.lowest = lowest;
    s.N = std::max(n, lowest);
    s.c.assign(size_t(s.N - lowest), base.zero());
    return s;
  }
  Elem zero() const { return make(0, N); }
  Elem one() const { return from_coeff(base.one()); }
  Elem from_int(int64_t n) const { return from_coeff(base.from_int(n)); }
  Elem from_ol(const OLApprox& a) const { return from_coeff(base.from_ol(a)); }
  Elem from_coeff(const Coeff& a) const {
    Elem s = zero();
    if (N > 0) s.c[0] = a;
    return s;
  }
  Elem from_coeffs(const std::vector<Coeff>& cs, int lowest = 0) const {
    Elem s = make(lowest, N);
    for (size_t i = 0; i < cs.size() && i < s.c.size(); ++i) s.c[i] = cs[i];
    return s;
  }
  Elem monomial(const Coeff& a, int d) const {
    Elem s = make(std::min(0, d), N);
    if (d < N) s.c[size_t(d - s.lowest)] = a;
    return s;
  }
  Elem T() const { return monomial(base.one(), 1); }

  Coeff coeff(const Elem& a, int d) const {
    if (d < a.lowest || d >= a.N) return base.zero();
    return a.c[size_t(d - a.lowest)];
  }

  Elem truncate(const Elem& a, int n) const {
    if (n >= a.N) return a;
    Elem s = make(a.lowest, n);
    for (size_t i = 0; i < s.c.size(); ++i) s.c[i] = a.c[i];
    return s;
  }
  Elem shift(const Elem& a, int k) const {
    Elem s = a;
    s.lowest += k;
    s.N += k;
    return s;
  }

  Elem add(const Elem& a, const Elem& b) const {
    Elem s = make(std::min(a.lowest, b.lowest), std::min(a.N, b.N));
    for (int d = s.lowest; d < s.N; ++d) s.c[size_t(d - s.lowest)] = base.add(coeff(a, d), coeff(b, d));
    return s;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem s = make(std::min(a.lowest, b.lowest), std::min(a.N, b.N));
    for (int d = s.lowest; d < s.N; ++d) s.c[size_t(d - s.lowest)] = base.sub(coeff(a, d), coeff(b, d));
    return s;
  }
  Elem neg(const Elem& a) const {
    Elem s = a;
    for (auto& x : s.c) x = base.neg(x);
    return s;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    int n = std::min(a.N + b.lowest, b.N + a.lowest);
    Elem s = make(a.lowest + b.lowest, n);
    for (size_t i = 0; i < a.c.size(); ++i) {
      if (base.is_zero(a.c[i]) && !tracks_precision()) continue;
      for (size_t j = 0; j < b.c.size() && int(i + j) < n - s.lowest; ++j)
        s.c[i + j] = base.add(s.c[i + j], base.mul(a.c[i], b.c[j]));
    }
    return s;
  }
  Elem scale(const Coeff& k, const Elem& a) const {
    Elem s = a;
    for (auto& x : s.c) x = base.mul(k, x);
    return s;
  }
  bool eq(const Elem& a, const Elem& b) const {
    int lo = std::min(a.lowest, b.lowest), hi = std::min(a.N, b.N);
    for (int d = lo; d < hi; ++d)
      if (!base.eq(coeff(a, d), coeff(b, d))) return false;
    return true;
  }
  bool is_zero(const Elem& a) const {
    for (const auto& x : a.c)
      if (!base.is_zero(x)) return false;
    return true;
  }
  const OLField* ol() const { return base.ol(); }
  int coeff_precision() const { return ltp::coeff_precision(base); }

  // Index of the first coefficient not indistinguishable from zero, or N.
  int valuation_T(const Elem& a) const {
    for (size_t i = 0; i < a.c.size(); ++i)
      if (!base.is_zero(a.c[i])) return a.lowest + int(i);
    return a.N;
  }

  std::string repr(const Elem& a) const { return str_impl(a, false); }
  std::string str(const Elem& a) const { return str_impl(a, true); }

  Elem compose(const Elem& f, const Elem& g) const {
    require(f.lowest >= 0, Code::InvalidArgument, "composition needs a power series on the left");
    require(g.lowest >= 0, Code::InvalidArgument, "inner series must be a power series");
    require(base.is_zero(coeff(g, 0)), Code::ConstantTerm, "inner series has a nonzero constant term");
    int n = std::min(f.N, g.N);
    Elem gg = truncate(g, n);
    Elem acc = make(0, n);
    for (int k = std::min(f.N, n) - 1; k >= 0; --k) {
      acc = mul(acc, gg);
      acc.c[0] = base.add(acc.c[0], coeff(f, k));
    }
    return truncate(acc, n);
  }

  Elem invert_unit(const Elem& u) const {
    require(u.lowest <= 0 && u.N > 0, Code::NotUnit, "series has no constant term");
    Coeff u0 = coeff(u, 0);
    if constexpr (requires { base.is_unit(u0); base.inv(u0); }) {
      require(base.is_unit(u0) && valuation_T(u) == 0, Code::NotUnit, "constant term is not a unit");
      for (int d = u.lowest; d < 0; ++d) require(base.is_zero(coeff(u, d)), Code::NotUnit, "polar part present");
      Coeff inv0 = base.inv(u0);
      Elem v = make(0, u.N);
      v.c[0] = inv0;
      for (int n = 1; n < u.N; ++n) {
        Coeff s = base.zero();
        for (int k = 1; k <= n; ++k) s = base.add(s, base.mul(coeff(u, k), v.c[size_t(n - k)]));
        v.c[size_t(n)] = base.neg(base.mul(inv0, s));
      }
      return v;
    } else {
      fail(Code::NotUnit, "coefficient ring has no inverses");
    }
  }

  // Exact quotient when den = T^k * unit; INEXACT otherwise.
  Elem divide_exact(const Elem& num, const Elem& den) const {
    int k = valuation_T(den);
    require(k < den.N, Code::Inexact, "division by a series indistinguishable from zero");
    if constexpr (requires(Coeff x) { base.is_unit(x); }) {
      require(base.is_unit(coeff(den, k)), Code::Inexact,
              "leading coefficient of the divisor is not a unit; no exact route");
    }
    Elem u = make(0, den.N - k);
    for (int d = 0; d < u.N; ++d) u.c[size_t(d)] = coeff(den, d + k);
    Elem nn = shift(num, -k);
    if (num.lowest >= 0 && nn.lowest < 0) {
      for (int d = nn.lowest; d < std::min(0, nn.N); ++d)
        require(base.is_zero(coeff(nn, d)), Code::Inexact, "nonzero remainder");
      Elem t = make(0, nn.N);
      for (int d = 0; d < nn.N; ++d) t.c[size_t(d)] = coeff(nn, d);
      nn = t;
    }
    return mul(nn, invert_unit(u));
  }

  Elem frobenius(const Elem& a) const {
    require(frob_T != nullptr, Code::NoFrobenius, "series ring has no designated Frobenius lift");
    Elem tw = a;
    if constexpr (FrobeniusRing<R>)
      for (auto& x : tw.c) x = base.frobenius(x);
    require(tw.lowest >= 0, Code::InvalidArgument, "Frobenius lift defined on power series only");
    return compose(tw, *frob_T);
  }

  Elem div_pi(const Elem& a) const
    requires PiDivisible<R>
  {
    Elem s = a;
    for (auto& x : s.c) x = base.div_pi(x);
    return s;
  }

  bool is_unit(const Elem& a) const {
    if constexpr (requires(Coeff x) { base.is_unit(x); })
      return a.lowest <= 0 && valuation_T(a) == 0 && base.is_unit(coeff(a, 0));
    else
      return false;
  }
  Elem inv(const Elem& a) const { return invert_unit(a); }

  int prec_of(const Elem& a) const {
    int P = 1 << 20;
    if constexpr (requires(Coeff x) { base.prec_of(x); })
      for (const auto& x : a.c) P = std::min(P, base.prec_of(x));
    return P;
  }

  Elem random(Rng& g) const
    requires SampledRing<R>
  {
    Elem s = zero();
    for (auto& x : s.c) x = base.random(g);
    return s;
  }

  bool operator==(const SeriesRing& o) const { return base == o.base && N == o.N; }

 private:
  static constexpr bool tracks_precision() { return std::is_same_v<Coeff, OLApprox>; }

  std::string str_impl(const Elem& a, bool with_o) const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < a.c.size(); ++i) {
      if (base.is_zero(a.c[i])) continue;
      int d = a.lowest + int(i);
      std::string cs = coeff_repr(base, a.c[i]);
      bool neg = !cs.empty() && cs[0] == '-' && cs.find(' ') == std::string::npos;
      if (neg) cs = cs.substr(1);
      if (cs.find(' ') != std::string::npos) cs = "(" + cs + ")";
      if (first) os << (neg ? "-" : "");
      else os << (neg ? " - " : " + ");
      first = false;
      std::string mono = d == 0 ? "" : (d == 1 ? "T" : "T^" + std::to_string(d));
      if (mono.empty()) os << cs;
      else if (cs == "1") os << mono;
      else os << cs << "*" << mono;
    }
    if (first) os << "0";
    if (with_o) os << " + O(T^" << a.N << ")";
    return os.str();
  }
};

template <CommRing R>
SeriesRing<R> series_ring(const R& base, int N) {
  return SeriesRing<R>(base, N);
}

// Free-function forms matching the documented operations.
template <CommRing R>
typename SeriesRing<R>::Elem series_add(const SeriesRing<R>& S, const typename SeriesRing<R>::Elem& a,
                                        const typename SeriesRing<R>::Elem& b) {
  return S.add(a, b);
}
template <CommRing R>
typename SeriesRing<R>::Elem series_mul(const SeriesRing<R>& S, const typename SeriesRing<R>::Elem& a,
                                        const typename SeriesRing<R>::Elem& b) {
  return S.mul(a, b);
}
template <CommRing R>
typename SeriesRing<R>::Elem series_compose(const SeriesRing<R>& S, const typename SeriesRing<R>::Elem& f,
                                            const typename SeriesRing<R>::Elem& g) {
  return S.compose(f, g);
}
template <CommRing R>
typename SeriesRing<R>::Elem series_divide_exact(const SeriesRing<R>& S, const typename SeriesRing<R>::Elem& a,
                                                 const typename SeriesRing<R>::Elem& b) {
  return S.divide_exact(a, b);
}
template <CommRing R>
typename SeriesRing<R>::Elem series_invert_unit(const SeriesRing<R>& S, const typename SeriesRing<R>::Elem& u) {
  return S.invert_unit(u);
}

// Dense series in nv <= 3 variables truncated by total degree < N. Monomials
// are ordered by degree; coefficient index is given by index().
template <CommRing R>
struct MSeriesRing {
  using Coeff = typename R::Elem;
  struct Elem {
    std::vector<Coeff> c;
  };
  using Expo = std::array<int, 3>;

  R base;
  int nv = 2;
  int N = 10;
  std::vector<Expo> expo;
  std::vector<int> deg;

  MSeriesRing() = default;
  MSeriesRing(R b, int nvars, int n) : base(std::move(b)), nv(nvars), N(n) {
    require(nv >= 1 && nv <= 3, Code::InvalidArgument, "1 to 3 variables supported");
    expo.resize(size_t(count_below(N)));
    deg.resize(expo.size());
    for (int d = 0; d < N; ++d) {
      if (nv == 1) {
        put({d, 0, 0});
      } else if (nv == 2) {
        for (int b2 = 0; b2 <= d; ++b2) put({d - b2, b2, 0});
      } else {
        for (int s = 0; s <= d; ++s)
          for (int c3 = 0; c3 <= s; ++c3) put({d - s, s - c3, c3});
      }
    }
  }

  int count_below(int d) const {
    if (nv == 1) return d;
    if (nv == 2) return d * (d + 1) / 2;
    return d * (d + 1) * (d + 2) / 6;
  }
  int index(const Expo& e) const {
    int d = e[0] + e[1] + e[2];
    if (nv == 1) return d;
    if (nv == 2) return count_below(d) + e[1];
    int s = e[1] + e[2];
    return count_below(d) + s * (s + 1) / 2 + e[2];
  }
  size_t size() const { return expo.size(); }

  Elem zero() const { return Elem{std::vector<Coeff>(size(), base.zero())}; }
  Elem constant(const Coeff& a) const {
    Elem r = zero();
    if (N > 0) r.c[0] = a;
    return r;
  }
  Elem one() const { return constant(base.one()); }
  Elem var(int i) const {
    Elem r = zero();
    Expo e{0, 0, 0};
    e[size_t(i)] = 1;
    if (N > 1) r.c[size_t(index(e))] = base.one();
    return r;
  }
  Coeff coeff(const Elem& a, const Expo& e) const {
    int d = e[0] + e[1] + e[2];
    return d < N ? a.c[size_t(index(e))] : base.zero();
  }
  Elem add(const Elem& a, const Elem& b) const {
    Elem r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = base.add(r.c[i], b.c[i]);
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    Elem r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] = base.sub(r.c[i], b.c[i]);
    return r;
  }
  Elem scale(const Coeff& k, const Elem& a) const {
    Elem r = a;
    for (auto& x : r.c) x = base.mul(k, x);
    return r;
  }
  Elem mul(const Elem& a, const Elem& b) const {
    Elem r = zero();
    for (size_t i = 0; i < size(); ++i) {
      if (base.is_zero(a.c[i])) continue;
      const Expo& ei = expo[i];
      size_t lim = size_t(count_below(N - deg[i]));
      for (size_t j = 0; j < lim; ++j) {
        if (base.is_zero(b.c[j])) continue;
        const Expo& ej = expo[j];
        size_t k = size_t(index({ei[0] + ej[0], ei[1] + ej[1], ei[2] + ej[2]}));
        r.c[k] = base.add(r.c[k], base.mul(a.c[i], b.c[j]));
      }
    }
    return r;
  }
  bool eq(const Elem& a, const Elem& b) const {
    for (size_t i = 0; i < size(); ++i)
      if (!base.eq(a.c[i], b.c[i])) return false;
    return true;
  }
  bool has_constant_term(const Elem& a) const { return N > 0 && !base.is_zero(a.c[0]); }

  // f(g) for a univariate power series f and g without constant term.
  Elem compose(const Series<Coeff>& f, const Elem& g) const {
    require(!has_constant_term(g), Code::ConstantTerm, "inner series has a nonzero constant term");
    Elem acc = zero();
    int top = std::min(f.N, N);
    for (int k = top - 1; k >= 0; --k) {
      acc = mul(acc, g);
      if (k >= f.lowest) acc.c[0] = base.add(acc.c[0], f.c[size_t(k - f.lowest)]);
    }
    return acc;
  }

  // F(g1, g2) for a two-variable F (given in ring F2) and g1, g2 in this ring.
  Elem compose2(const MSeriesRing& F2, const typename MSeriesRing::Elem& Fs, const Elem& g1, const Elem& g2) const {
    require(!has_constant_term(g1) && !has_constant_term(g2), Code::ConstantTerm,
            "inner series has a nonzero constant term");
    int top = std::min(F2.N, N);
    std::vector<Elem> p2{one()};
    for (int j = 1; j < top; ++j) p2.push_back(mul(p2.back(), g2));
    Elem acc = zero();
    for (int i = top - 1; i >= 0; --i) {
      acc = mul(acc, g1);
      for (int j = 0; i + j < top; ++j) {
        const Coeff& c = Fs.c[size_t(F2.index({i, j, 0}))];
        if (base.is_zero(c)) continue;
        for (size_t k = 0; k < size(); ++k) acc.c[k] = base.add(acc.c[k], base.mul(c, p2[size_t(j)].c[k]));
      }
    }
    return acc;
  }

 private:
  void put(const Expo& e) {
    size_t k = size_t(index(e));
    expo[k] = e;
    deg[k] = e[0] + e[1] + e[2];
  }
};

using OLSeriesRing = SeriesRing<OLRing>;
using OLSeries = OLSeriesRing::Elem;

// Parse "3*T + T^3" style integer polynomials over O_L (used by the CLI and tests).
OLSeries parse_ol_series(const OLSeriesRing& S, const std::string& text);

}  // namespace ltp
