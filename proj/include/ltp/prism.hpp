#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ltp/check.hpp"
#include "ltp/lubintate.hpp"
#include "ltp/ring.hpp"
#include "ltp/series.hpp"
#include "ltp/unram.hpp"
#include "ltp/witt.hpp"

namespace ltp {

enum class DeltaSource { Frobenius, WittSection };

// A pi-torsion-free ring with a Frobenius lift, viewed as a delta_L-ring.
// WittSection reads delta off the second coordinate of s_R : R -> W_{L,2}(R).
template <class R>
  requires FrobeniusRing<R> && PiDivisible<R>
struct DeltaRing {
  using Elem = typename R::Elem;
  R ring;
  DeltaSource source = DeltaSource::Frobenius;

  Elem phi(const Elem& a) const { return ring.frobenius(a); }
  Elem delta(const Elem& a) const {
    if (source == DeltaSource::WittSection) return delta_from_w2(ring, a);
    Elem d = ring.sub(phi(a), ring_pow(ring, a, uint64_t(ring.ol()->q())));
    try {
      return ring.div_pi(d);
    } catch (const Error& e) {
      if (e.code() == Code::Indivisible) fail(Code::IntegrityFailure, "phi(x) - x^q is not divisible by pi");
      throw;
    }
  }
};

enum class UnitStatus { Unit, NonUnit, Unknown };

inline UnitStatus unit_status(const OLRing&, const OLApprox& a) {
  if (a.prec() < 1) return UnitStatus::Unknown;
  return a.is_unit() ? UnitStatus::Unit : UnitStatus::NonUnit;
}

inline UnitStatus unit_status(const UnramExt& r, const UnramExt::Elem& a) {
  for (const auto& c : a)
    if (c.prec() < 1) return UnitStatus::Unknown;
  return r.is_unit(a) ? UnitStatus::Unit : UnitStatus::NonUnit;
}

template <class R>
UnitStatus unit_status(const SeriesRing<R>& S, const typename SeriesRing<R>::Elem& a) {
  if (a.lowest > 0) return UnitStatus::NonUnit;
  if (a.N <= 0) return UnitStatus::Unknown;
  for (int d = a.lowest; d < 0; ++d)
    if (!S.base.is_zero(S.coeff(a, d))) return UnitStatus::NonUnit;
  return unit_status(S.base, S.coeff(a, 0));
}

template <class E>
struct Distinguished {
  bool distinguished = false;
  E delta;
  // pi = a3 * d^q + b3 * phi(d) and pi = a4 * d + b4 * phi(d), set when distinguished
  E a3, b3, a4, b4;
  bool witnesses_ok = false;
};

// d is distinguished iff delta(d) is a unit; throws UNDECIDABLE_AT_PRECISION
// when the unit test needs digits that were lost.
template <class R>
Distinguished<typename R::Elem> is_distinguished(const DeltaRing<R>& D, const typename R::Elem& d) {
  const R& r = D.ring;
  Distinguished<typename R::Elem> out;
  out.delta = D.delta(d);
  UnitStatus st = unit_status(r, out.delta);
  if (st == UnitStatus::Unknown)
    fail(Code::UndecidableAtPrecision, "delta(d) vanishes at the available precision");
  out.distinguished = st == UnitStatus::Unit;
  if (!out.distinguished) return out;
  auto inv = r.inv(out.delta);
  auto q = uint64_t(r.ol()->q());
  auto pd = D.phi(d);
  auto pi = r.from_ol(OLApprox::pi_power(r.ol(), 1, std::max(1, coeff_precision(r))));
  out.b3 = inv;
  out.a3 = r.neg(inv);
  out.b4 = inv;
  out.a4 = r.neg(r.mul(inv, ring_pow(r, d, q - 1)));
  bool iii = r.eq(r.add(r.mul(out.a3, ring_pow(r, d, q)), r.mul(out.b3, pd)), pi);
  bool iv = r.eq(r.add(r.mul(out.a4, d), r.mul(out.b4, pd)), pi);
  out.witnesses_ok = iii && iv;
  return out;
}

inline int64_t binomial(int64_t n, int64_t k) {
  int64_t r = 1;
  for (int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// The three defining identities of a delta_L-structure on random samples.
template <class R>
  requires SampledRing<R>
std::vector<CheckResult> check_delta_axioms(const DeltaRing<R>& D, int samples, uint64_t seed,
                                            const std::string& prefix = "delta") {
  const R& r = D.ring;
  const OLField* F = r.ol();
  int P = std::max(1, coeff_precision(r));
  require(P >= 2, Code::InsufficientPrecision, "delta needs coefficient precision at least 2");
  auto q = F->q();
  Rng g(seed);
  OLRing O(F, P);
  std::vector<OLApprox> binq;
  for (int64_t i = 1; i < q; ++i) binq.push_back(OLApprox::from_int(F, binomial(q, i), P + 1).div_pi(1));

  CheckResult c0{prefix + ".ol-constants", "delta-on-OL", true, "", ""};
  CheckResult c1{prefix + ".product", "delta-product-identity", true, "", ""};
  CheckResult c2{prefix + ".sum", "delta-sum-identity", true, "", ""};
  int bad0 = 0, bad1 = 0, bad2 = 0;
  for (int s = 0; s < samples; ++s) {
    OLApprox al = O.random(g);
    auto lhs0 = D.delta(r.from_ol(al));
    auto rhs0 = r.from_ol((al - al.pow(uint64_t(q))).div_pi(1));
    if (!r.eq(lhs0, rhs0)) ++bad0;
    c0.certificate += r.str(lhs0) + ";";

    auto x = r.random(g), y = r.random(g);
    auto dx = D.delta(x), dy = D.delta(y);
    auto xq = ring_pow(r, x, uint64_t(q)), yq = ring_pow(r, y, uint64_t(q));
    auto pi = r.from_ol(OLApprox::pi_power(F, 1, P));
    auto lhs1 = D.delta(r.mul(x, y));
    auto rhs1 = r.add(r.add(r.mul(dx, yq), r.mul(xq, dy)), r.mul(pi, r.mul(dx, dy)));
    if (!r.eq(lhs1, rhs1)) ++bad1;
    c1.certificate += r.str(lhs1) + ";";

    auto lhs2 = D.delta(r.add(x, y));
    auto rhs2 = r.add(dx, dy);
    for (int64_t i = 1; i < q; ++i)
      rhs2 = r.sub(rhs2, ring_scale(r, binq[size_t(i - 1)],
                                    r.mul(ring_pow(r, x, uint64_t(i)), ring_pow(r, y, uint64_t(q - i)))));
    if (!r.eq(lhs2, rhs2)) ++bad2;
    c2.certificate += r.str(lhs2) + ";";
  }
  auto finish = [&](CheckResult& c, int bad) {
    c.pass = bad == 0;
    c.detail = std::to_string(samples - bad) + "/" + std::to_string(samples) + " samples";
  };
  finish(c0, bad0);
  finish(c1, bad1);
  finish(c2, bad2);
  return {c0, c1, c2};
}

// The delta_L-ring (O_L[[T]], T -> [pi](T)) attached to a Lubin-Tate group.
DeltaRing<OLSeriesRing> lt_delta_ring(const LTGroup& G);

// gen_m = g_m([pi^(n-1)](T)) with g_m(X) = [pi^m](X)/X; generates I_m at level n.
OLSeries gen_m(const LTGroup& G, int n, int m);

// Class of rep * gen_m in I_m / I_m^2.
struct BKTwistClass {
  int m = 0;
  OLSeries rep;
};

// Classes of [pi^(m-1)](alpha), m = 1..M, for alpha = [a pi^n](T). Each rep c
// is certified by c * gen_m == [a pi^(n+m-1)](T); WITNESS_FAILURE otherwise.
std::vector<BKTwistClass> log_prism(const LTGroup& G, const OLApprox& a, int n, int M);

// Truncation that sees gen_M^2: q^(n+M) + q^(n+M-1).
int default_log_truncation(int64_t q, int n, int M);

CheckResult check_log_membership(const LTGroup& G, const OLApprox& a, int n, int M);
CheckResult check_log_transition(const LTGroup& G, const OLApprox& a, int n, int M);
CheckResult check_log_additivity(const LTGroup& G, const OLApprox& a, const OLApprox& b, int n, int M);
// log([a](alpha)) = a log(alpha) for alpha = [b pi^n](T).
CheckResult check_log_linearity(const LTGroup& G, const OLApprox& a, const OLApprox& b, int n, int M);
// gen_m = prod_{i<m} q_{n+i}, each factor certified, plus the mod-pi shape.
CheckResult check_qn_intersection(const LTGroup& G, int n, int m);
// q_n distinguished and pi = A q_n + B q_{n+1}.
CheckResult check_prism_witness(const LTGroup& G, int n);

}  // namespace ltp
