#include "doctest.h"
#include "ltp/prism.hpp"

using namespace ltp;

namespace {

const OLField* field(int p, int f = 1, int e = 1) { return OLField::get(OLConfig{p, f, e, {}, {}}); }

using IPoly = std::vector<int64_t>;

IPoly pmul(const IPoly& a, const IPoly& b) {
  IPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

IPoly padd(IPoly a, const IPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

bool matches(const OLSeries& s, const IPoly& p) {
  for (int d = 0; d < s.N; ++d) {
    int64_t v = size_t(d) < p.size() ? p[size_t(d)] : 0;
    if (!s.c[size_t(d)].equals(OLApprox::from_int(s.c[size_t(d)].field(), v, s.c[size_t(d)].prec()))) return false;
  }
  return true;
}

// x -> x + pi x^2 lifts x -> x^3 on Z_3 but is not a ring map.
struct BogusFrobenius : OLRing {
  using OLRing::OLRing;
  Elem frobenius(const Elem& a) const { return a + OLApprox::pi_power(F, 1, P) * a * a; }
};

}  // namespace

TEST_CASE("delta axioms detect a non-multiplicative Frobenius") {
  DeltaRing<BogusFrobenius> D{BogusFrobenius(field(3), 6)};
  auto rs = check_delta_axioms(D, 20, 9);
  CHECK_FALSE(rs[0].pass);
  CHECK_FALSE(rs[1].pass);
  CHECK_FALSE(rs[2].pass);
}

TEST_CASE("delta on O_L with the identity Frobenius") {
  const OLField* F = field(3);
  DeltaRing<OLRing> D{OLRing(F, 5)};
  CHECK(D.delta(D.ring.one()).is_zero());
  CHECK(D.delta(D.ring.zero()).is_zero());
  auto dp = D.delta(OLApprox::pi_power(F, 1, 5));
  CHECK(dp.str() == "-8 + O(3^4)");
  DeltaRing<OLRing> W{OLRing(F, 5), DeltaSource::WittSection};
  CHECK(W.delta(OLApprox::pi_power(F, 1, 5)).equals(dp));
  // 1 - pi^(q-1) in a ramified field
  const OLField* R = field(3, 1, 2);
  DeltaRing<OLRing> DR{OLRing(R, 6)};
  auto pi = OLApprox::pi_power(R, 1, 6);
  CHECK(DR.delta(pi).equals(OLApprox::from_int(R, 1, 5) - pi.pow(2)));
}

TEST_CASE("delta axioms on sampled rings") {
  for (auto [p, f, e] : std::vector<std::array<int, 3>>{{3, 1, 1}, {2, 1, 1}, {2, 2, 1}, {3, 1, 2}, {5, 1, 1}}) {
    const OLField* F = field(p, f, e);
    CAPTURE(F->describe());
    for (auto src : {DeltaSource::Frobenius, DeltaSource::WittSection}) {
      CHECK(all_pass(check_delta_axioms(DeltaRing<OLRing>{OLRing(F, 6), src}, 50, 1)));
      CHECK(all_pass(check_delta_axioms(DeltaRing<UnramExt>{UnramExt::get(F, 2, 5), src}, 30, 2)));
    }
    auto G = LTGroup::standard(F, 10, 5);
    for (auto src : {DeltaSource::Frobenius, DeltaSource::WittSection}) {
      DeltaRing<OLSeriesRing> D{G->ring(), src};
      auto rs = check_delta_axioms(D, 20, 3);
      REQUIRE(rs.size() == 3);
      CHECK(all_pass(rs));
    }
  }
  CHECK_THROWS_AS(check_delta_axioms(DeltaRing<OLRing>{OLRing(field(3), 1)}, 2, 1), Error);
}

TEST_CASE("distinguished elements") {
  const OLField* F = field(3);
  DeltaRing<OLRing> O{OLRing(F, 6)};
  auto pi = OLApprox::pi_power(F, 1, 6);
  auto r = is_distinguished(O, pi);
  CHECK(r.distinguished);
  CHECK(r.witnesses_ok);
  CHECK_FALSE(is_distinguished(O, pi * pi).distinguished);
  // delta(2) = (2 - 8)/3 = -2
  CHECK(is_distinguished(O, O.ring.from_int(2)).distinguished);
  DeltaRing<OLRing> low{OLRing(F, 1)};
  try {
    is_distinguished(low, OLApprox::pi_power(F, 1, 1));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Code::UndecidableAtPrecision);
  }

  auto G = LTGroup::standard(F, 20, 6);
  auto D = lt_delta_ring(*G);
  const auto& S = G->ring();
  for (int n = 1; n <= 3; ++n) {
    auto q = is_distinguished(D, G->qn(n));
    CHECK(q.distinguished);
    CHECK(q.witnesses_ok);
  }
  // delta(q_1) has constant term (3 - 27)/3 = -8 up to the T-part
  CHECK(D.delta(G->qn(1)).c[0].equals(OLApprox::from_int(F, -8, 5)));
  CHECK_FALSE(is_distinguished(D, S.mul(G->qn(1), G->qn(1))).distinguished);
  CHECK_FALSE(is_distinguished(D, S.T()).distinguished);
}

TEST_CASE("gen_m") {
  const OLField* F = field(3);
  auto G = LTGroup::standard(F, 30, 5);
  const auto& S = G->ring();
  CHECK(S.eq(gen_m(*G, 1, 1), G->qn(1)));
  CHECK(S.eq(gen_m(*G, 2, 1), G->qn(2)));
  for (int m = 1; m <= 3; ++m) CHECK(gen_m(*G, 2, m).c[0].equals(OLApprox::pi_power(F, m, 5)));
  // n=1, m=2: (3 f + f^3)/T with f = 3T + T^3
  IPoly f{0, 3, 0, 1};
  IPoly ff = padd(pmul(IPoly{3}, f), pmul(f, pmul(f, f)));
  IPoly shifted(ff.begin() + 1, ff.end());
  CHECK(matches(gen_m(*G, 1, 2), shifted));
  CHECK(default_log_truncation(3, 1, 2) == 36);
  CHECK(default_log_truncation(3, 1, 3) == 108);
}

TEST_CASE("q_n intersection certificates") {
  auto G = LTGroup::standard(field(3), 40, 4);
  for (int n = 1; n <= 2; ++n)
    for (int m = 1; m <= 3; ++m) {
      auto r = check_qn_intersection(*G, n, m);
      CAPTURE(r.detail);
      CHECK(r.pass);
    }
  auto G2 = LTGroup::standard(field(2), 40, 4);
  CHECK(check_qn_intersection(*G2, 1, 3).pass);
}

TEST_CASE("prismatic logarithm") {
  const OLField* F = field(3);
  auto G = LTGroup::standard(F, default_log_truncation(3, 1, 2), 4);
  const auto& S = G->ring();
  auto W = G->work_prec();
  auto zero = log_prism(*G, OLApprox::zero(F, W), 1, 3);
  for (const auto& k : zero) CHECK(S.is_zero(k.rep));
  auto one = OLApprox::from_int(F, 1, W), two = OLApprox::from_int(F, 2, W);
  CHECK(check_log_membership(*G, one, 1, 2).pass);
  CHECK(check_log_membership(*G, two, 1, 2).pass);
  CHECK(check_log_transition(*G, one, 1, 2).pass);
  CHECK(check_log_transition(*G, two, 1, 2).pass);
  CHECK(check_log_additivity(*G, one, one, 1, 2).pass);
  CHECK(check_log_additivity(*G, two, OLApprox::zero(F, W), 1, 2).pass);
  CHECK(check_log_linearity(*G, two, one, 1, 2).pass);
  // level-1 rep for a = 1, n = 1 is T * h_1([pi](T)) = T
  auto l1 = log_prism(*G, one, 1, 1);
  CHECK(S.eq(l1[0].rep, S.T()));
  // cyclotomic group at p = 2
  auto C = LTGroup::cyclotomic(field(2), 24, 4);
  auto o2 = OLApprox::from_int(field(2), 1, C->work_prec());
  CHECK(check_log_transition(*C, o2, 1, 2).pass);
  CHECK(check_log_additivity(*C, o2, o2, 1, 2).pass);
  CHECK(check_prism_witness(*G, 1).pass);
  CHECK(check_prism_witness(*G, 2).pass);
}
