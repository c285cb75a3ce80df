#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "doctest.h"
#include "ltp/series.hpp"
#include "ltp/unram.hpp"
#include "ltp/witt.hpp"

using namespace ltp;

namespace {

const OLField* field(int p, int f = 1, int e = 1) { return OLField::get(OLConfig{p, f, e, {}, {}}); }

int64_t binom(int n, int k) {
  int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("ghost map examples") {
  const OLField* F = field(3);
  WittRing<OLRing> W(OLRing(F, 6), 3);
  auto x = W.from_coords({W.base().zero(), W.base().one(), W.base().zero()});
  auto g = W.ghost(x);
  CHECK(g[0].is_zero());
  CHECK(g[1].equals(W.base().from_int(3)));
  // w_2 = x_0^9 + 3 x_1^3 + 9 x_2
  CHECK(g[2].equals(W.base().from_int(3)));
  auto a = W.base().from_int(5);
  auto tg = W.ghost(W.teichmuller(a));
  CHECK(tg[1].equals(a.pow(3)));
  CHECK(tg[2].equals(a.pow(9)));
  // w_1(x_0, x_1) = x_0^3 + 3 x_1
  auto y = W.from_coords({W.base().from_int(2), W.base().from_int(7), W.base().zero()});
  CHECK(W.ghost(y)[1].equals(W.base().from_int(8 + 21)));
}

TEST_CASE("S_0, M_0 and S_1 against a symbolic oracle") {
  const OLField* F = field(3);
  auto U = UniversalPolys::get(F, 5);
  const auto& S0 = U->poly(WittOp::Sum, 0);
  CHECK(S0.size() == 2);
  const auto& M0 = U->poly(WittOp::Prod, 0);
  REQUIRE(M0.size() == 1);
  CHECK(M0.terms[0].m[witt_x(0)] == 1);
  CHECK(M0.terms[0].m[witt_y(0)] == 1);
  // S_1 = X_1 + Y_1 - sum_{0<i<3} binom(3,i)/3 X_0^i Y_0^{3-i}
  std::map<std::pair<int, int>, int64_t> expect;
  for (int i = 1; i < 3; ++i) expect[{i, 3 - i}] = -binom(3, i) / 3;
  const auto& S1 = U->poly(WittOp::Sum, 1);
  CHECK(S1.size() == 4);
  for (const auto& t : S1.terms) {
    if (t.m[witt_x(1)] == 1 || t.m[witt_y(1)] == 1) {
      CHECK(t.c.equals(OLApprox::from_int(F, 1, 20)));
      continue;
    }
    auto key = std::make_pair(int(t.m[witt_x(0)]), int(t.m[witt_y(0)]));
    REQUIRE(expect.count(key));
    CHECK(t.c.equals(OLApprox::from_int(F, expect[key], 20)));
  }
}

TEST_CASE("Witt addition over F_3: [1] + [1] + [1] = (0, 1)") {
  const OLField* F = field(3);
  WittRing<FqRing> W(FqRing::make(F, 1), 2);
  auto one = W.teichmuller(1);
  auto s = W.add(W.add(one, one), one);
  CHECK(s.x[0] == 0);
  CHECK(s.x[1] == 1);
  auto x = W.from_coords({2, 1});
  CHECK(W.eq(W.add(x, W.zero()), x));
  CHECK(W.eq(W.from_int(3), s));
}

TEST_CASE("Teichmuller is multiplicative over F_9") {
  const OLField* F = field(3);
  FqRing k = FqRing::make(F, 2);
  WittRing<FqRing> W(k, 3);
  for (int r = 0; r < 9; ++r)
    for (int s = 0; s < 9; ++s)
      CHECK(W.eq(W.mul(W.teichmuller(FqField::E(r)), W.teichmuller(FqField::E(s))),
                 W.teichmuller(k.mul(FqField::E(r), FqField::E(s)))));
}

TEST_CASE("W_2(F_3) is Z/9 through the Teichmuller digit map") {
  const OLField* F = field(3);
  WittRing<FqRing> W(FqRing::make(F, 1), 2);
  std::vector<WittVec<FqField::E>> all;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) all.push_back(W.from_coords({FqField::E(a), FqField::E(b)}));
  std::set<int64_t> images;
  auto val = [&](const WittVec<FqField::E>& x) { return witt_fq_to_ol(F, x.x); };
  for (auto& x : all) images.insert(val(x).digits()[0]);
  CHECK(images.size() == 9);
  for (auto& x : all)
    for (auto& y : all) {
      CHECK(val(W.add(x, y)).equals(val(x) + val(y)));
      CHECK(val(W.mul(x, y)).equals(val(x) * val(y)));
    }
}

TEST_CASE("Witt ring laws on samples") {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    const OLField* F = field(p, f);
    CAPTURE(F->describe());
    Rng g(17);
    for (int len = 1; len <= 3; ++len) {
      WittRing<OLRing> W(OLRing(F, 8), len);
      WittRing<OLRing> W1(OLRing(F, 8), len + 1);
      WittRing<FqRing> Wk(FqRing::make(F, 1), len), Wk1(FqRing::make(F, 1), len + 1);
      auto piW = W.from_ol(OLApprox::pi_power(F, 1, 20));
      auto pik = Wk.from_ol(OLApprox::pi_power(F, 1, 20));
      for (int it = 0; it < 10; ++it) {
        auto x = W.random(g), y = W.random(g);
        auto gx = W.ghost(x), gy = W.ghost(y);
        auto gs = W.ghost(W.add(x, y)), gm = W.ghost(W.mul(x, y)), gn = W.ghost(W.neg(x));
        for (int k = 0; k < len; ++k) {
          CHECK(gs[size_t(k)].equals(gx[size_t(k)] + gy[size_t(k)]));
          CHECK(gm[size_t(k)].equals(gx[size_t(k)] * gy[size_t(k)]));
          CHECK(gn[size_t(k)].equals(-gx[size_t(k)]));
        }
        CHECK(W.eq(W1.frobenius_truncating(W.verschiebung(x)), W.mul(piW, x)));
        auto z = W1.random(g);
        auto gz = W1.ghost(z), gfz = W.ghost(W1.frobenius_truncating(z));
        for (int k = 0; k < len; ++k) CHECK(gfz[size_t(k)].equals(gz[size_t(k + 1)]));
        // V(x F(z)) = V(x) z in W_{len+1}
        CHECK(W1.eq(W.verschiebung(W.mul(x, W1.frobenius_truncating(z))), W1.mul(W.verschiebung(x), z)));

        auto a = Wk.random(g), b = Wk.random(g);
        auto c = Wk1.random(g);
        CHECK(Wk.eq(Wk1.frobenius_truncating(Wk.verschiebung(a)), Wk.mul(pik, a)));
        CHECK(Wk1.eq(Wk.verschiebung(Wk.mul(a, Wk1.frobenius_truncating(c))), Wk1.mul(Wk.verschiebung(a), c)));
        // over F_q-algebras F is the coordinatewise q-power
        auto fc = Wk1.frobenius_truncating(c);
        for (int k = 0; k < len; ++k)
          CHECK(fc.x[size_t(k)] == ring_pow(Wk.base(), c.x[size_t(k)], uint64_t(F->q())));
        CHECK(Wk.eq(Wk.add(a, Wk.neg(a)), Wk.zero()));
        CHECK(Wk.eq(Wk.mul(a, b), Wk.mul(b, a)));
      }
    }
  }
}

TEST_CASE("delta section and delta from W_2") {
  const OLField* F = field(3);
  OLRing O(F, 5);
  auto d = delta_from_w2(O, OLApprox::pi_power(F, 1, 5));
  CHECK(d.equals(OLApprox::from_int(F, -8, 4)));
  CHECK(d.str() == "-8 + O(3^4)");
  CHECK(delta_from_w2(O, O.zero()).is_zero());
  CHECK(delta_from_w2(O, O.one()).is_zero());

  OLSeriesRing S(OLRing(F, 6), 12);
  S.frob_T = std::make_shared<OLSeries>(parse_ol_series(S, "3*T + T^3"));
  auto s = delta_section(S, S.T(), 3);
  CHECK(S.eq(s.x[1], S.T()));
  CHECK(S.eq(delta_from_w2(S, S.T()), S.T()));
  // ghost components are (a, phi(a), phi^2(a))
  WittRing<OLSeriesRing> W(S, 3);
  auto g = W.ghost(WittVec<OLSeries>{s.x});
  CHECK(S.eq(g[1], S.frobenius(S.T())));
  CHECK(S.eq(g[2], S.frobenius(S.frobenius(S.T()))));

  OLSeriesRing bad(OLRing(F, 6), 12);
  bad.frob_T = std::make_shared<OLSeries>(parse_ol_series(bad, "T + T^2"));
  try {
    delta_section(bad, bad.T(), 2);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Code::IntegrityFailure);
  }
}

TEST_CASE("delta section is a ring map over an unramified extension") {
  const OLField* F = field(3);
  UnramExt R = UnramExt::get(F, 2, 6);
  WittRing<UnramExt> W(R, 3);
  Rng g(2);
  for (int it = 0; it < 10; ++it) {
    auto a = R.random(g), b = R.random(g);
    auto sa = delta_section(R, a, 3), sb = delta_section(R, b, 3);
    auto sab = delta_section(R, R.mul(a, b), 3);
    auto spb = delta_section(R, R.add(a, b), 3);
    CHECK(W.eq(W.mul(sa, sb), sab));
    CHECK(W.eq(W.add(sa, sb), spb));
  }
}

TEST_CASE("universal polynomial cache round trip and tamper detection") {
  const OLField* F = field(3);
  auto U = build_universal_cache(F, 3, 5);
  CHECK(U->ghost_check(3, 1));
  auto dir = std::filesystem::temp_directory_path() / "ltp_witt_cache_test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "z3.json").string();
  U->save(path, 3);
  auto L = UniversalPolys::load(path, F);
  CHECK(L->poly(WittOp::Prod, 2).size() == U->poly(WittOp::Prod, 2).size());
  // later indices still build on top of a loaded cache
  CHECK(L->poly(WittOp::Sum, 3).size() == U->poly(WittOp::Sum, 3).size());

  std::string text;
  {
    std::ifstream in(path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  auto pos = text.find("\"M\":[[[[");
  REQUIRE(pos != std::string::npos);
  auto tampered = text;
  auto dig = tampered.find("]", pos + 8);
  tampered.insert(dig, "1");
  {
    std::ofstream out(path);
    out << tampered;
  }
  try {
    UniversalPolys::load(path, F);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Code::IntegrityFailure);
  }
  std::filesystem::remove_all(dir);
}
