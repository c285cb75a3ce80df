#include "doctest.h"
#include "ltp/tower.hpp"

using namespace ltp;

namespace {

const OLField* field(int p, int f = 1, int e = 1) { return OLField::get(OLConfig{p, f, e, {}, {}}); }

OLSeriesRing frob_series_ring(const LTGroup& G, int P, int N) {
  OLSeriesRing S(OLRing(G.field(), P), N);
  std::vector<OLApprox> fc;
  for (const auto& c : G.frobenius_poly()) fc.push_back(c.with_prec(P));
  S.frob_T = std::make_shared<OLSeries>(S.from_coeffs(fc));
  return S;
}

}  // namespace

TEST_CASE("tower levels") {
  const OLField* F = field(3);
  auto G = LTGroup::standard(F, 10, 6);
  auto L1 = TowerLevel::make(*G, 1, 6);
  CHECK(L1.rank() == 2);
  CHECK(L1.modulus_is_eisenstein());
  auto e1 = L1.e();
  CHECK(L1.eq(L1.mul(e1, e1), L1.from_int(-3)));
  CHECK(L1.str(L1.add(L1.one(), e1)) == "1 + e_1 + O(3^6)");
  auto L2 = TowerLevel::make(*G, 2, 6);
  CHECK(L2.rank() == 6);
  CHECK(L2.modulus_is_eisenstein());
  auto L3 = TowerLevel::make(*G, 3, 4);
  CHECK(L3.rank() == 18);
  CHECK(L3.modulus_is_eisenstein());
  // q_1([pi](e_2)) = 0
  auto pe2 = L2.eval_poly(G->frobenius_poly(), L2.e());
  CHECK(L2.is_zero(L2.eval_poly(L1.modulus(), pe2)));
  CHECK(L2.eq(L2.embed(L1, e1), pe2));
  CHECK(L2.is_zero(L2.eval_poly(L2.modulus(), L2.e())));
  // [pi](e_1) = e_0 = 0
  CHECK(L1.is_zero(L1.eval_poly(G->frobenius_poly(), e1)));

  auto C = LTGroup::cyclotomic(field(2), 10, 5);
  auto Z = TowerLevel::make(*C, 2, 5);
  CHECK(Z.rank() == 2);
  CHECK(Z.modulus_is_eisenstein());
  // level 1 of mu_{2^infty} is Z_2 with e_1 = -2
  auto Z1 = TowerLevel::make(*C, 1, 5);
  CHECK(Z1.eq(Z1.e(), Z1.from_int(-2)));

  std::vector<OLApprox> bad{OLApprox::zero(F, 6), OLApprox::pi_power(F, 1, 6), OLApprox::from_int(F, 3, 6),
                            OLApprox::from_int(F, 1, 6), OLApprox::from_int(F, 3, 6)};
  auto H = LTGroup::make(F, bad, 10, 4);
  CHECK_THROWS_AS(TowerLevel::make(*H, 1, 4), Error);
}

TEST_CASE("iota_n is a phi-compatible ring map") {
  const OLField* F = field(3);
  auto G = LTGroup::standard(F, 10, 6);
  auto L1 = TowerLevel::make(*G, 1, 5), L2 = TowerLevel::make(*G, 2, 5);
  auto S = frob_series_ring(*G, 5, 40);
  Rng g(3);
  CHECK(L1.eq(L1.iota(S.T()), L1.e()));
  OLSeries q1 = S.zero();
  q1.c[0] = S.base.from_int(3);
  q1.c[2] = S.base.one();
  CHECK(L1.is_zero(L1.iota(q1)));
  for (int it = 0; it < 20; ++it) {
    auto f = S.random(g), h = S.random(g);
    CHECK(L2.eq(L2.iota(S.frobenius(f)), L2.embed(L1, L1.iota(f))));
    CHECK(L1.eq(L1.iota(S.mul(f, h)), L1.mul(L1.iota(f), L1.iota(h))));
    CHECK(L2.eq(L2.iota(S.add(f, h)), L2.add(L2.iota(f), L2.iota(h))));
  }
  OLSeriesRing shortS(OLRing(F, 5), 4);
  CHECK(L1.prec_of(L1.iota(shortS.T())) == 2);
  CHECK_THROWS_AS(L2.iota(OLSeriesRing(OLRing(F, 5), 5).T()), Error);
}

TEST_CASE("truncated tilt and omega bar") {
  const OLField* F = field(3);
  auto t = TruncTilt::make(F, 3, 4, 3);
  CHECK(t.comp_dim() == 54);
  auto w = t.omega_bar();
  CHECK(t.is_compatible(w));
  const auto& C = t.comp_ring();
  CHECK(C.is_zero(w[0]));
  // component 1 is e_1 = e_4^27, component 2 is e_2 = e_4^9
  CHECK(C.eq(w[1], C.monomial(1, 27)));
  CHECK(C.eq(w[2], C.monomial(1, 9)));
  // omega^(q^k) has zero components
  auto p = w;
  for (int i = 0; i < 3; ++i) p = t.frobenius(p);
  CHECK(t.is_zero(p));
  Rng g(5);
  for (int it = 0; it < 10; ++it) {
    auto a = t.random(g), b = t.random(g);
    CHECK(t.is_compatible(a));
    CHECK(t.is_compatible(t.mul(a, b)));
    CHECK(t.is_compatible(t.add(a, b)));
    auto fa = t.frobenius(a);
    CHECK(t.eq(t.phi_inverse(fa, 1), std::vector<TruncTilt::Comp>(a.begin(), a.end() - 1)));
  }
  try {
    TruncTilt::make(F, 3, 2, 3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Code::DepthExceedsTower);
  }
  try {
    t.iota_bar(C.T(), 3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Code::DepthExceedsTower);
  }
}

TEST_CASE("iota into W(tilt) is a ring map commuting with Frobenius") {
  const OLField* F = field(3);
  auto G = LTGroup::standard(F, 10, 6);
  auto t = TruncTilt::make(F, 3, 3, 3);
  auto S = frob_series_ring(*G, 3, t.comp_dim());
  WittRing<TruncTilt> W(t, 3);
  auto om = iota_witt(S, S.T(), t, 3);
  CHECK(t.eq(om.x[0], t.omega_bar()));
  Rng g(7);
  for (int it = 0; it < 20; ++it) {
    auto f = S.random(g), h = S.random(g);
    auto xf = iota_witt(S, f, t, 3), xh = iota_witt(S, h, t, 3);
    for (const auto& c : xf.x) CHECK(t.is_compatible(c));
    CHECK(W.eq(iota_witt(S, S.mul(f, h), t, 3), W.mul(xf, xh)));
    CHECK(W.eq(iota_witt(S, S.add(f, h), t, 3), W.add(xf, xh)));
    if (it < 5) {
      auto xp = iota_witt(S, S.frobenius(f), t, 3);
      for (int i = 0; i < 3; ++i) CHECK(t.eq(xp.x[size_t(i)], t.frobenius(xf.x[size_t(i)])));
      // phi^{-1} as a shift agrees with the shifted system
      auto sh = t.shallower(1);
      auto x1 = iota_witt(S, f, sh, 3, 1);
      for (int i = 0; i < 3; ++i) CHECK(sh.eq(x1.x[size_t(i)], t.phi_inverse(xf.x[size_t(i)], 1)));
    }
  }
}

TEST_CASE("theta on simple inputs") {
  const OLField* F = field(3);
  auto G = LTGroup::standard(F, 10, 6);
  auto t = TruncTilt::make(F, 3, 3, 3);
  auto R = TowerLevel::make(*G, 3, 3);
  WittRing<TruncTilt> W(t, 3);
  Rng g(11);
  auto r = t.random(g);
  auto tr = W.teichmuller(r);
  auto th = theta(tr, t, R);
  CHECK(R.prec_of(th) == 3);
  // theta([r]) = lift(r_2)^9
  TowerLevel::Elem lift = R.zero();
  const auto& fq = *t.comp_ring().base.k;
  for (int d = 0; d < R.rank(); ++d) lift[size_t(d)] = OLApprox::from_residue(F, fq.coeffs(r[2].c[size_t(d)]), 3);
  CHECK(R.eq(th, ring_pow(R, lift, 9)));
  auto x = W.random(g);
  auto pix = W.mul(W.from_ol(OLApprox::pi_power(F, 1, 4)), x);
  CHECK(R.eq(theta(pix, t, R), R.mul(R.from_int(3), theta(x, t, R))));
  WittRing<TruncTilt> W4(TruncTilt::make(F, 3, 4, 3), 4);
  try {
    theta(W4.zero(), TruncTilt::make(F, 3, 4, 3), TowerLevel::make(*G, 4, 3));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Code::InsufficientDepth);
  }
}

TEST_CASE("theta o phi^-n o iota = iota_n") {
  const OLField* F = field(3);
  auto G = LTGroup::standard(F, 10, 6);
  for (int n = 0; n <= 2; ++n) {
    auto rep = verify_theta_phi_iota(*G, n, 3, 3, 6, 21);
    CAPTURE(rep.check.detail);
    CHECK(rep.check.pass);
  }
  // f = T, n = 1: e_1 in Z_3[T]/(T^2 + 3), seen at level 3
  auto rep = verify_theta_phi_iota(*G, 1, 3, 3, 3, 1);
  auto L1 = TowerLevel::make(*G, 1, 3);
  auto R = TowerLevel::make(*G, 3, 3);
  CHECK(rep.samples[0].f == "T");
  CHECK(R.eq(R.with_prec(rep.samples[0].lhs, 2), R.with_prec(R.embed(L1, L1.e()), 2)));
  CHECK(rep.samples[1].f == "q_n");
  CHECK(R.is_zero(rep.samples[1].lhs));
  // without the shift theta(iota(T)) = iota_0(T) = 0, not e_1
  auto t = TruncTilt::make(F, 3, 3, 3);
  OLSeriesRing S(OLRing(F, 3), t.comp_dim());
  S.frob_T = std::make_shared<OLSeries>(parse_ol_series(S, "3*T + T^3"));
  CHECK(R.is_zero(theta(iota_witt(S, S.T(), t, 3, 0), t, R)));
  CHECK(R.eq(theta(iota_witt(S, S.T(), t, 3, 1), t, R), R.embed(L1, L1.e())));
  try {
    verify_theta_phi_iota(*G, 1, 2, 3, 3, 1);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Code::InsufficientDepth);
  }
  auto C = LTGroup::cyclotomic(field(2), 10, 6);
  CHECK(verify_theta_phi_iota(*C, 1, 3, 3, 5, 2).check.pass);
  auto G5 = LTGroup::standard(field(5), 10, 6);
  CHECK(verify_theta_phi_iota(*G5, 1, 2, 2, 4, 2).check.pass);
}
