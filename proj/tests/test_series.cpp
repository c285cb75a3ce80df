#include "doctest.h"
#include "ltp/series.hpp"

using namespace ltp;

namespace {

const OLField* Z3() { return OLField::get(OLConfig{3, 1, 1, {}, {}}); }

OLSeriesRing ring(int N, int P = 10) { return OLSeriesRing(OLRing(Z3(), P), N); }

OLSeries poly(const OLSeriesRing& S, std::vector<int64_t> cs) {
  std::vector<OLApprox> v;
  for (auto c : cs) v.push_back(S.base.from_int(c));
  return S.from_coeffs(v);
}

// Integer polynomial product truncated at n, as an independent oracle.
std::vector<int64_t> int_mul(const std::vector<int64_t>& a, const std::vector<int64_t>& b, size_t n) {
  std::vector<int64_t> r(n, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size() && i + j < n; ++j) r[i + j] += a[i] * b[j];
  return r;
}

}  // namespace

TEST_CASE("series products from the operation examples") {
  auto S = ring(10);
  CHECK(S.eq(S.mul(poly(S, {1, 1}), poly(S, {1, -1})), poly(S, {1, 0, -1})));
  auto f = poly(S, {0, 3, 0, 1});
  CHECK(S.eq(S.mul(f, f), poly(S, {0, 0, 9, 0, 6, 0, 1})));
  CHECK(S.str(f) == "3*T + T^3 + O(T^10)");
  CHECK(S.str(poly(S, {1, 0, -1})) == "1 - T^2 + O(T^10)");
  CHECK(S.str(S.zero()) == "0 + O(T^10)");
}

TEST_CASE("composition") {
  auto S = ring(10);
  auto r = S.compose(poly(S, {0, 0, 1}), poly(S, {0, 1, 1}));
  CHECK(S.eq(r, poly(S, {0, 0, 1, 2, 1})));
  try {
    S.compose(poly(S, {0, 1}), poly(S, {1, 1}));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Code::ConstantTerm);
  }
}

TEST_CASE("exact division and inversion") {
  auto S = ring(10);
  auto q = S.divide_exact(poly(S, {0, 3, 0, 1}), poly(S, {0, 1}));
  CHECK(S.eq(q, poly(S, {3, 0, 1})));
  CHECK(q.N == 9);

  auto S4 = ring(4);
  CHECK(S4.eq(S4.invert_unit(poly(S4, {1, 1})), poly(S4, {1, -1, 1, -1})));

  // (2+T)^{-1} mod (T^2, 3^2): 2^{-1} = 5, coefficient of T is -1/4 = -7 = 2 mod 9
  auto S2 = ring(2, 2);
  auto inv = S2.invert_unit(poly(S2, {2, 1}));
  CHECK(inv.c[0].equals(OLApprox::from_int(Z3(), 5, 2)));
  CHECK(inv.c[1].equals(OLApprox::from_int(Z3(), 2, 2)));

  try {
    S.invert_unit(poly(S, {3, 1}));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Code::NotUnit);
  }
  try {
    S.divide_exact(poly(S, {1, 1}), poly(S, {0, 1}));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Code::Inexact);
  }
  try {
    S.divide_exact(poly(S, {3}), poly(S, {3, 1}));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Code::Inexact);
  }
}

TEST_CASE("series ring axioms against integer oracle") {
  Rng g(11);
  const int N = 12;
  auto S = ring(N, 30);
  for (int it = 0; it < 200; ++it) {
    std::vector<int64_t> a(N), b(N), c(N);
    for (int i = 0; i < N; ++i) {
      a[size_t(i)] = int64_t(g() % 21) - 10;
      b[size_t(i)] = int64_t(g() % 21) - 10;
      c[size_t(i)] = int64_t(g() % 21) - 10;
    }
    auto A = poly(S, a), B = poly(S, b), C = poly(S, c);
    CHECK(S.eq(S.mul(A, B), poly(S, int_mul(a, b, N))));
    CHECK(S.eq(S.mul(S.mul(A, B), C), S.mul(A, S.mul(B, C))));
    CHECK(S.eq(S.mul(A, S.add(B, C)), S.add(S.mul(A, B), S.mul(A, C))));
    CHECK(S.eq(S.mul(A, B), S.mul(B, A)));
    // composition is a ring map in the outer argument
    B.c[0] = S.base.zero();
    CHECK(S.eq(S.compose(S.mul(A, C), B), S.mul(S.compose(A, B), S.compose(C, B))));
    if (S.is_unit(A)) CHECK(S.eq(S.mul(A, S.invert_unit(A)), S.one()));
  }
}

TEST_CASE("series Frobenius through T -> [pi](T)") {
  auto S = ring(12);
  S.frob_T = std::make_shared<OLSeries>(poly(S, {0, 3, 0, 1}));
  Rng g(3);
  for (int it = 0; it < 30; ++it) {
    OLSeries a = S.zero(), b = S.zero();
    for (auto& x : a.c) x = S.base.random(g);
    for (auto& x : b.c) x = S.base.random(g);
    CHECK(S.eq(S.frobenius(S.mul(a, b)), S.mul(S.frobenius(a), S.frobenius(b))));
    // phi(a) = a^3 mod 3
    auto d = S.sub(S.frobenius(a), ring_pow(S, a, 3));
    CHECK_NOTHROW(S.div_pi(d));
  }
  OLSeriesRing plain = ring(5);
  CHECK_THROWS_AS(plain.frobenius(plain.T()), Error);
}

TEST_CASE("parse series text") {
  auto S = ring(10);
  CHECK(S.eq(parse_ol_series(S, "3*T + T^3"), poly(S, {0, 3, 0, 1})));
  CHECK(S.eq(parse_ol_series(S, "pi*T - T^2 + 2"), poly(S, {2, 3, -1})));
  CHECK(parse_ol_series(S, "T + O(T^5)").N == 5);
  CHECK_THROWS_AS(parse_ol_series(S, "3*X"), Error);
}

TEST_CASE("multivariate series: composition matches direct expansion") {
  OLRing R(Z3(), 10);
  MSeriesRing<OLRing> M2(R, 2, 8), M3(R, 3, 8);
  auto X = M2.var(0), Y = M2.var(1);
  // F = X + Y + XY
  auto F = M2.add(M2.add(X, Y), M2.mul(X, Y));
  auto x = M3.var(0), y = M3.var(1), z = M3.var(2);
  auto fxy = M3.add(M3.add(x, y), M3.mul(x, y));
  auto fyz = M3.add(M3.add(y, z), M3.mul(y, z));
  auto lhs = M3.compose2(M2, F, fxy, z);
  auto rhs = M3.compose2(M2, F, x, fyz);
  CHECK(M3.eq(lhs, rhs));
  // (1+x)(1+y)(1+z) - 1
  auto one = M3.one();
  auto expect = M3.sub(M3.mul(M3.mul(M3.add(one, x), M3.add(one, y)), M3.add(one, z)), one);
  CHECK(M3.eq(lhs, expect));
  auto S = ring(8);
  auto sq = M2.compose(poly(S, {0, 0, 1}), M2.add(X, Y));
  CHECK(M2.eq(sq, M2.mul(M2.add(X, Y), M2.add(X, Y))));
}
