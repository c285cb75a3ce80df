#include "doctest.h"
#include "ltp/unram.hpp"

using namespace ltp;

TEST_CASE("charpoly satisfies Cayley-Hamilton over Z/3^6") {
  const OLField* F = OLField::get(OLConfig{3, 1, 1, {}, {}});
  OLRing R(F, 6);
  Rng g(5);
  for (int n = 1; n <= 5; ++n) {
    std::vector<std::vector<OLApprox>> A(n, std::vector<OLApprox>(n));
    for (auto& row : A)
      for (auto& x : row) x = R.random(g);
    auto cp = charpoly(R, A);
    REQUIRE(int(cp.size()) == n + 1);
    OLApprox tr = R.zero();
    for (int i = 0; i < n; ++i) tr = tr + A[i][i];
    CHECK(cp[1].equals(-tr));
    // Horner with matrices
    std::vector<std::vector<OLApprox>> acc(n, std::vector<OLApprox>(n, R.zero()));
    for (int k = 0; k <= n; ++k) {
      std::vector<std::vector<OLApprox>> nxt(n, std::vector<OLApprox>(n, R.zero()));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          for (int l = 0; l < n; ++l) nxt[i][j] = nxt[i][j] + acc[i][l] * A[l][j];
          if (i == j) nxt[i][j] = nxt[i][j] + cp[k];
        }
      acc = nxt;
    }
    for (auto& row : acc)
      for (auto& x : row) CHECK(x.is_zero());
  }
}

TEST_CASE("unramified extension: Frobenius lifts the q-power map") {
  for (auto [cfg, m] : std::vector<std::pair<OLConfig, int>>{{OLConfig{3, 1, 1, {}, {}}, 2},
                                                              {OLConfig{2, 1, 1, {}, {}}, 3},
                                                              {OLConfig{2, 2, 1, {}, {}}, 2},
                                                              {OLConfig{3, 1, 2, {}, {}}, 2},
                                                              {OLConfig{5, 1, 1, {}, {}}, 1}}) {
    const OLField* F = OLField::get(cfg);
    const int P = 4;
    UnramExt R = UnramExt::get(F, m, P);
    CAPTURE(F->describe());
    CAPTURE(m);
    // h has Teichmuller roots: z^{q^m} = z
    CHECK(R.eq(ring_pow(R, R.z(), R.residue_size()), R.z()));
    Rng g(9);
    for (int it = 0; it < 30; ++it) {
      auto x = R.random(g), y = R.random(g);
      auto fx = R.frobenius(x);
      // phi(x) - x^q divisible by pi
      auto d = R.sub(fx, ring_pow(R, x, uint64_t(F->q())));
      CHECK_NOTHROW(R.div_pi(d));
      CHECK(R.eq(R.frobenius(R.add(x, y)), R.add(fx, R.frobenius(y))));
      CHECK(R.eq(R.frobenius(R.mul(x, y)), R.mul(fx, R.frobenius(y))));
      auto it_m = x;
      for (int k = 0; k < m; ++k) it_m = R.frobenius(it_m);
      CHECK(R.eq(it_m, x));
      OLRing O(F, P);
      auto a = O.random(g);
      CHECK(R.eq(R.frobenius(R.from_ol(a)), R.from_ol(a)));
      if (R.is_unit(x)) CHECK(R.eq(R.mul(x, R.inv(x)), R.one()));
    }
  }
}

TEST_CASE("teichmuller lift of a generator of F_4 is a cube root of unity") {
  const OLField* F = OLField::get(OLConfig{2, 1, 1, {}, {}});
  UnramExt R = UnramExt::get(F, 2, 4);
  auto t = R.teichmuller(R.z());
  CHECK(R.eq(ring_pow(R, t, 3), R.one()));
  CHECK(!R.eq(t, R.one()));
  CHECK(R.residue_index(t) == R.residue_index(R.z()));
}

TEST_CASE("Frobenius sends Teichmuller lifts to their q-th powers") {
  const OLField* F = OLField::get(OLConfig{3, 1, 1, {}, {}});
  UnramExt R = UnramExt::get(F, 2, 5);
  UnramExt R1 = UnramExt::get(F, 2, 1);
  for (uint64_t idx = 0; idx < R.residue_size(); ++idx) {
    auto t = R.teichmuller_of_index(idx);
    auto gq = ring_pow(R1, R1.from_residue_index(idx), 3);
    CHECK(R.eq(R.frobenius(t), R.teichmuller(R.lift_prec(gq, 5))));
  }
}

TEST_CASE("base change embedding is a Frobenius-equivariant ring map") {
  const OLField* F = OLField::get(OLConfig{3, 1, 1, {}, {}});
  UnramExt S = UnramExt::get(F, 2, 3), T = UnramExt::get(F, 4, 3);
  UnramEmbedding emb = unram_embedding(S, T);
  Rng g(1);
  for (int it = 0; it < 20; ++it) {
    auto x = S.random(g), y = S.random(g);
    CHECK(T.eq(emb(S.mul(x, y)), T.mul(emb(x), emb(y))));
    CHECK(T.eq(emb(S.add(x, y)), T.add(emb(x), emb(y))));
    CHECK(T.eq(emb(S.frobenius(x)), T.frobenius(emb(x))));
  }
  CHECK_THROWS_AS(unram_embedding(UnramExt::get(F, 3, 3), T), Error);
}
