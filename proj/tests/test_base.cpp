#include <random>

#include "doctest.h"
#include "ltp/error.hpp"
#include "ltp/ol.hpp"

using namespace ltp;

namespace {

const OLField* Z3() { return OLField::get(OLConfig{3, 1, 1, {}, {}}); }

// Plain integer oracle for Z/p^k arithmetic.
int64_t modp(int64_t a, int64_t m) { return ((a % m) + m) % m; }

}  // namespace

TEST_CASE("conway table entries match the defining search") {
  for (auto [p, n] : conway_table_entries()) {
    CAPTURE(p);
    CAPTURE(n);
    PolyFp c = conway_polynomial(p, n);
    CHECK(fp::is_irreducible(c, p));
    CHECK(fp::is_primitive(c, p));
    CHECK(fp::is_conway_compatible(c, p));
    CHECK(conway_search(p, n) == c);
  }
}

TEST_CASE("conway polynomials beyond the table are compatible") {
  PolyFp c = conway_polynomial(3, 4);
  CHECK(c == PolyFp{2, 0, 0, 2, 1});
  CHECK(fp::is_conway_compatible(conway_polynomial(2, 6), 2));
}

TEST_CASE("finite field tables satisfy x^q = x and field axioms") {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 2}, {5, 1}, {7, 2}, {2, 5}}) {
    auto F = FqField::get(p, f);
    for (int a = 0; a < F->q(); ++a) {
      CHECK(F->pow(FqField::E(a), uint64_t(F->q())) == a);
      if (a) CHECK(F->mul(FqField::E(a), F->inv(FqField::E(a))) == 1);
      CHECK(F->add(FqField::E(a), F->neg(FqField::E(a))) == 0);
    }
    // the class of x generates the multiplicative group
    int order = 1;
    for (auto g = F->gen(); g != 1; g = F->mul(g, F->gen())) ++order;
    CHECK(order == F->q() - 1);
  }
}

TEST_CASE("ol_make examples") {
  OLApprox pi = ol_make(OLConfig{3, 1, 1, {}, {}}, {3}, 4);
  CHECK(pi.valuation() == 1);
  CHECK(pi.prec() == 4);
  OLApprox z = ol_make(OLConfig{3, 1, 1, {}, {}}, {0}, 4);
  CHECK(z.is_zero());
  CHECK(z.prec() == 4);
  OLConfig c4{2, 2, 1, {}, {}};
  OLApprox g = ol_make(c4, {0, 1}, 3);
  CHECK(g.residue() == std::vector<int>{0, 1});
  CHECK_THROWS_AS(ol_make(OLConfig{3, 1, 1, {}, {}}, {1}, 0), Error);
}

TEST_CASE("non-Eisenstein moduli are rejected") {
  OLConfig bad{3, 1, 2, {{1}, {0}}, {}};
  CHECK_THROWS_AS(OLField::get(bad), Error);
  OLConfig bad2{3, 1, 2, {{9}, {0}}, {}};
  CHECK_THROWS_AS(OLField::get(bad2), Error);
  OLConfig good{3, 1, 2, {{-3}, {3}}, {}};
  const OLField* F = OLField::get(good);
  CHECK(OLApprox::pi_power(F, 1, 6).valuation() == 1);
  CHECK(OLApprox::from_int(F, 3, 6).valuation() == 2);
}

TEST_CASE("Z/p^k arithmetic agrees with integer oracle") {
  const OLField* F = Z3();
  std::mt19937_64 rng(7);
  const int P = 6;
  const int64_t m = 729;
  for (int it = 0; it < 500; ++it) {
    int64_t a = int64_t(rng() % 2000) - 1000, b = int64_t(rng() % 2000) - 1000;
    OLApprox A = OLApprox::from_int(F, a, P), B = OLApprox::from_int(F, b, P);
    CHECK((A + B).coeff(0) == modp(a + b, m));
    CHECK((A - B).coeff(0) == modp(a - b, m));
    CHECK((A * B).coeff(0) == modp(a * b, m));
    if (a % 3) CHECK(modp((A.inverse()).coeff(0) * a, m) == 1);
  }
}

TEST_CASE("val_divide_pi examples") {
  const OLField* F = Z3();
  OLApprox pi2 = OLApprox::pi_power(F, 2, 5);
  OLApprox one = val_divide_pi(pi2, 2);
  CHECK(one.prec() == 3);
  CHECK(one.equals(OLApprox::from_int(F, 1, 3)));
  OLApprox d = val_divide_pi(OLApprox::from_int(F, 3 - 27, 5), 1);
  CHECK(d.prec() == 4);
  CHECK(d.equals(OLApprox::from_int(F, -8, 4)));
  try {
    val_divide_pi(OLApprox::from_int(F, 1, 5), 1);
    FAIL("expected INDIVISIBLE");
  } catch (const Error& e) {
    CHECK(e.code() == Code::Indivisible);
  }
  try {
    val_divide_pi(OLApprox::zero(F, 2), 3);
    FAIL("expected INSUFFICIENT_PRECISION");
  } catch (const Error& e) {
    CHECK(e.code() == Code::InsufficientPrecision);
  }
}

TEST_CASE("division by pi in ramified and unramified extensions") {
  for (OLConfig cfg : {OLConfig{3, 1, 2, {}, {}}, OLConfig{2, 2, 3, {}, {}}, OLConfig{5, 1, 3, {{-5}, {10}, {5}}, {}},
                       OLConfig{3, 2, 1, {}, {}}}) {
    const OLField* F = OLField::get(cfg);
    CAPTURE(F->describe());
    std::mt19937_64 rng(11);
    const int P = 8;
    OLApprox pi = OLApprox::pi_power(F, 1, P);
    CHECK(pi.valuation() == 1);
    CHECK(OLApprox::from_int(F, F->p(), P).valuation() == F->e());
    for (int it = 0; it < 100; ++it) {
      std::vector<int64_t> d(F->ef());
      for (auto& v : d) v = int64_t(rng() % 50);
      OLApprox x = OLApprox::make(F, d, P);
      OLApprox y = (x * pi).div_pi(1);
      CHECK(y.prec() == P - 1);
      CHECK(y.equals(x));
      if (x.is_unit()) CHECK((x * x.inverse()).equals(OLApprox::from_int(F, 1, P)));
    }
  }
}

TEST_CASE("precision monotonicity: high precision truncates to low precision result") {
  const OLField* F = OLField::get(OLConfig{2, 2, 2, {}, {}});
  std::mt19937_64 rng(3);
  for (int it = 0; it < 100; ++it) {
    std::vector<int64_t> a(4), b(4);
    for (auto& v : a) v = int64_t(rng() % 64);
    for (auto& v : b) v = int64_t(rng() % 64);
    OLApprox hi = OLApprox::make(F, a, 12) * OLApprox::make(F, b, 12) + OLApprox::make(F, a, 12);
    OLApprox lo = OLApprox::make(F, a, 5) * OLApprox::make(F, b, 5) + OLApprox::make(F, a, 5);
    CHECK(hi.with_prec(5).digits() == lo.digits());
  }
}

TEST_CASE("teichmuller lifts") {
  const OLField* F = Z3();
  OLApprox t = teichmuller_lift(F, {2}, 3);
  CHECK(t.coeff(0) == 26);
  CHECK(teichmuller_lift(F, {1}, 5).equals(OLApprox::from_int(F, 1, 5)));
  const OLField* F4 = OLField::get(OLConfig{2, 2, 1, {}, {}});
  OLApprox w = teichmuller_lift(F4, {0, 1}, 4);
  CHECK(w.pow(3).equals(OLApprox::from_int(F4, 1, 4)));
  CHECK(w.residue() == std::vector<int>{0, 1});
}

TEST_CASE("teichmuller lift is multiplicative for q <= 9") {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}}) {
    const OLField* F = OLField::get(OLConfig{p, f, 1, {}, {}});
    const FqField* k = F->residue_field();
    for (int P = 1; P <= 6; ++P)
      for (int a = 0; a < k->q(); ++a)
        for (int b = 0; b < k->q(); ++b) {
          auto ab = k->mul(FqField::E(a), FqField::E(b));
          OLApprox lhs = teichmuller_lift(F, k->coeffs(FqField::E(a)), P) * teichmuller_lift(F, k->coeffs(FqField::E(b)), P);
          CHECK(lhs.equals(teichmuller_lift(F, k->coeffs(ab), P)));
        }
  }
}
