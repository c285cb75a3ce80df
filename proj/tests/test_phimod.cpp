#include "doctest.h"
#include "ltp/phimod.hpp"

#include <set>

using namespace ltp;

namespace {

const OLField* field(int p, int f = 1, int e = 1) { return OLField::get(OLConfig{p, f, e, {}, {}}); }

std::set<std::string> keys(const std::vector<PhiVec>& vs) {
  std::set<std::string> s;
  for (const auto& v : vs) s.insert(vec_key(v));
  return s;
}

// |M| / |image of phi_M - 1| by enumeration
uint64_t brute_coker_size(const PhiModule& M) {
  auto all = enumerate_module(M);
  std::set<std::string> img;
  for (const auto& v : all) {
    PhiVec w = M.apply(v);
    for (int i = 0; i < M.r; ++i) w[size_t(i)] = M.base.sub(w[size_t(i)], v[size_t(i)]);
    img.insert(vec_key(w));
  }
  return all.size() / img.size();
}

UnramExt::Elem generator_teichmuller(const UnramExt& B) {
  UnramExt B1 = UnramExt::get(B.ol(), B.m(), 1);
  uint64_t Q = B.residue_size();
  for (uint64_t idx = 1; idx < Q; ++idx) {
    auto x = B1.from_residue_index(idx);
    uint64_t ord = 1;
    for (auto y = x; !B1.eq(y, B1.one()); y = B1.mul(y, x)) ++ord;
    if (ord == Q - 1) return B.teichmuller_of_index(idx);
  }
  return B.one();
}

PhiModule scalar(const UnramExt& B, const UnramExt::Elem& a) { return PhiModule::make(B, {{a}}); }

}  // namespace

TEST_CASE("etale condition") {
  const OLField* F = field(3);
  CHECK(is_etale(PhiModule::identity(UnramExt::get(F, 2, 2), 2)));
  auto B = UnramExt::get(F, 1, 2);
  auto pi = B.from_ol(OLApprox::pi_power(F, 1, 2));
  auto M = PhiModule::make(B, {{pi, B.zero()}, {B.zero(), B.one()}});
  CHECK_FALSE(is_etale(M));
  CHECK(B.eq(phi_det(M), pi));
  try {
    fixed_points(M);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Code::NotEtale);
  }
  Rng g(4);
  for (int i = 0; i < 10; ++i) CHECK(is_etale(PhiModule::random_etale(UnramExt::get(F, 2, 2), 2, g)));
}

TEST_CASE("fixed points of trivial modules") {
  const OLField* F = field(3);
  auto f9 = fixed_points(PhiModule::identity(UnramExt::get(F, 2, 1), 1));
  CHECK(f9.module.size() == 3);
  CHECK(f9.module.str() == "O/pi^1");
  auto z9 = fixed_points(PhiModule::identity(UnramExt::get(F, 1, 2), 1));
  CHECK(z9.module.exps == std::vector<int>{2});
  CHECK(z9.module.size() == 9);
  auto big = PhiModule::identity(UnramExt::get(F, 2, 2), 2);
  auto fb = fixed_points(big);
  CHECK(fb.module.exps == std::vector<int>{2, 2});
  for (const auto& v : fb.gens) CHECK(big.is_fixed(v));
}

TEST_CASE("fixed points agree with brute force") {
  struct Case {
    int p, f, e, m, n, r;
  };
  std::vector<Case> cases{{3, 1, 1, 1, 1, 1}, {3, 1, 1, 2, 1, 1}, {3, 1, 1, 1, 2, 1}, {3, 1, 1, 2, 2, 1},
                          {3, 1, 1, 1, 1, 2}, {3, 1, 1, 2, 1, 2}, {3, 1, 1, 1, 2, 2}, {3, 2, 1, 1, 1, 1},
                          {3, 2, 1, 2, 1, 1}, {3, 2, 1, 1, 2, 1}, {3, 2, 1, 1, 1, 2}, {2, 1, 1, 3, 2, 1},
                          {2, 1, 1, 2, 2, 2}, {2, 2, 1, 2, 1, 2}, {3, 1, 2, 1, 2, 2}, {5, 1, 1, 1, 2, 1}};
  Rng g(17);
  for (const auto& c : cases) {
    auto B = UnramExt::get(field(c.p, c.f, c.e), c.m, c.n);
    for (int it = 0; it < 3; ++it) {
      auto M = PhiModule::random_etale(B, c.r, g);
      CAPTURE(M.str());
      auto fp = fixed_points(M);
      for (const auto& v : fp.gens) CHECK(M.is_fixed(v));
      auto brute = brute_force_fixed(M);
      auto span = span_of(M, fp);
      CHECK(span.size() == fp.module.size());
      CHECK(keys(span) == keys(brute));
      CHECK(int(fp.module.exps.size()) <= c.r);
    }
  }
}

TEST_CASE("Herr cohomology") {
  const OLField* F = field(3);
  auto id = herr_h0_h1(PhiModule::identity(UnramExt::get(F, 1, 2), 2));
  CHECK(id.h0.exps == std::vector<int>{2, 2});
  CHECK(id.h1.exps == std::vector<int>{2, 2});
  auto f9 = herr_h0_h1(PhiModule::identity(UnramExt::get(F, 2, 1), 1));
  CHECK(f9.h0.size() == 3);
  CHECK(f9.h1.size() == 3);
  Rng g(23);
  for (int it = 0; it < 12; ++it) {
    int m = 1 + int(g() % 2), n = 1 + int(g() % 2), r = 1 + int(g() % 2);
    auto M = PhiModule::random_etale(UnramExt::get(F, m, n), r, g);
    CAPTURE(M.str());
    auto h = herr_h0_h1(M);
    CHECK(h.h0.size() == brute_force_fixed(M).size());
    CHECK(h.h1.size() == brute_coker_size(M));
  }
}

TEST_CASE("base change") {
  const OLField* F = field(3);
  auto M = PhiModule::identity(UnramExt::get(F, 1, 2), 1);
  CHECK(base_change(M, 1).base == M.base);
  try {
    base_change(PhiModule::identity(UnramExt::get(F, 2, 1), 1), 3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Code::NonMultiple);
  }
  CHECK(fixed_points(base_change(M, 2)).module.size() == 9);
  auto M1 = PhiModule::identity(UnramExt::get(F, 1, 1), 1);
  CHECK(fixed_points(base_change(M1, 2)).module.size() == 3);
  Rng g(8);
  auto R = PhiModule::random_etale(UnramExt::get(F, 1, 2), 2, g);
  auto R2 = base_change(R, 2);
  auto emb = unram_embedding(R.base, R2.base);
  auto fr = fixed_points(R);
  std::set<std::string> images;
  for (const auto& v : span_of(R, fr)) {
    PhiVec w;
    for (const auto& x : v) w.push_back(emb(x));
    CHECK(R2.is_fixed(w));
    images.insert(vec_key(w));
  }
  CHECK(images.size() == fr.module.size());
}

TEST_CASE("stabilization") {
  const OLField* F = field(3);
  auto id = stabilization_check(PhiModule::identity(UnramExt::get(F, 2, 2), 2), 4);
  CHECK(id.reached);
  CHECK(id.m_star == 1);
  auto B = UnramExt::get(F, 2, 1);
  auto st = stabilization_check(scalar(B, generator_teichmuller(B)), 4);
  CHECK(st.reached);
  CHECK(st.m_star == 2);
  CHECK(st.length_trace == std::vector<int>{0, 1});
  auto z = scalar(B, B.zero());
  CHECK_THROWS_AS(stabilization_check(z, 2), Error);
  Rng g(31);
  for (int m = 1; m <= 2; ++m)
    for (int n = 1; n <= 2; ++n)
      for (int it = 0; it < 4; ++it) {
        auto M = PhiModule::random_etale(UnramExt::get(F, m, n), 1, g);
        CAPTURE(M.str());
        auto s = stabilization_check(M, 12);
        CHECK(s.reached);
        // fixed points only grow along divisibility
        for (size_t a = 1; a <= s.length_trace.size(); ++a)
          for (size_t b = 2 * a; b <= s.length_trace.size(); b += a) CHECK(s.length_trace[a - 1] <= s.length_trace[b - 1]);
      }
}
