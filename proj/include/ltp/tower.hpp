#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ltp/check.hpp"
#include "ltp/lubintate.hpp"
#include "ltp/ring.hpp"
#include "ltp/series.hpp"
#include "ltp/witt.hpp"

namespace ltp {

// O_{L_n} = O_L[T]/(q_n(T)) modulo pi^P, with e_n the class of T. Elements are
// coordinate vectors in the basis 1, e_n, ..., e_n^(D-1), D = q^(n-1)(q-1).
// Needs a monic Frobenius polynomial of degree q so that q_n is Eisenstein.
class TowerLevel {
 public:
  using Elem = std::vector<OLApprox>;

  TowerLevel() = default;
  static TowerLevel make(const LTGroup& G, int n, int P);

  int n() const;
  int P() const;
  int rank() const;
  int coeff_precision() const { return P(); }
  const OLField* ol() const;
  // q_n, ascending, monic of degree rank()
  const std::vector<OLApprox>& modulus() const;
  bool modulus_is_eisenstein() const;

  Elem zero() const;
  Elem one() const;
  Elem from_int(int64_t v) const;
  Elem from_ol(const OLApprox& a) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  bool eq(const Elem& a, const Elem& b) const;
  bool is_zero(const Elem& a) const;
  std::string str(const Elem& a) const;
  Elem random(Rng& g) const;
  Elem with_prec(const Elem& a, int P) const;
  int prec_of(const Elem& a) const;

  Elem e() const;
  Elem eval_poly(const std::vector<OLApprox>& coeffs, const Elem& x) const;
  // iota_n(f) = f(e_n); exact modulo pi^min(P, floor(f.N / rank)).
  Elem iota(const OLSeries& f) const;
  // [pi^(n-m)](e_n) = e_m gives the embedding of a lower level m.
  Elem embed(const TowerLevel& lower, const Elem& x) const;

 private:
  struct Data;
  std::shared_ptr<const Data> d_;
};

// Truncated tilt of O_{L_infty}: sequences (x_0, ..., x_{k-1}) of elements of
// O_{L_N}/pi = F_q[T]/(T^D_N), T = e_N mod pi, with x_{i+1}^q = x_i.
class TruncTilt {
 public:
  using Comp = Series<FqField::E>;
  using Elem = std::vector<Comp>;

  TruncTilt() = default;
  static TruncTilt make(const OLField* F, int q, int level, int depth);

  int level() const;
  int depth() const;
  int comp_dim() const;
  const SeriesRing<FqRing>& comp_ring() const;
  const OLField* ol() const;

  Elem zero() const;
  Elem one() const;
  Elem from_int(int64_t v) const;
  Elem from_ol(const OLApprox& a) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  bool eq(const Elem& a, const Elem& b) const;
  bool is_zero(const Elem& a) const;
  std::string str(const Elem& a) const;
  // Compatible random element: a random last component and its q-powers.
  Elem random(Rng& g) const;

  bool is_compatible(const Elem& a) const;
  // x -> x^q, which shifts components towards index 0.
  Elem frobenius(const Elem& a) const;
  // phi^{-s}: drop the first s components; result lives in depth k - s.
  Elem phi_inverse(const Elem& a, int s) const;
  TruncTilt shallower(int s) const;

  // (..., e_2, e_1, 0) truncated to depth k.
  Elem omega_bar() const;
  // Component j is a(e_{j+shift}) mod pi for a in F_q[[T]]; a has to be known
  // modulo T^D_N when j + shift = N.
  Elem iota_bar(const Comp& a, int shift = 0) const;

 private:
  struct Data;
  std::shared_ptr<const Data> d_;
};

// iota^{->shift}(f) = W(iota-bar^{->shift})(s_A(f)) with len coordinates; the
// series ring must carry the Frobenius T -> [pi](T) and precision >= len.
WittVec<TruncTilt::Elem> iota_witt(const OLSeriesRing& S, const OLSeries& f, const TruncTilt& tilt, int len,
                                   int shift = 0);

// theta(x) = sum_i (x_i^(1/q^i))^# pi^i with r^# approximated by the lift of the
// last component raised to q^(k-1-i). Result is exact modulo pi^min(len, k, P).
TowerLevel::Elem theta(const WittVec<TruncTilt::Elem>& x, const TruncTilt& tilt, const TowerLevel& target);
int theta_precision(int len, int depth, int P);

struct ThetaSample {
  std::string f;
  TowerLevel::Elem lhs, rhs;
  int prec = 0;
  bool ok = false;
};

struct ThetaReport {
  CheckResult check;
  std::vector<ThetaSample> samples;
};

// theta(phi^{-n}(iota(f))) == iota_n(f) in O_{L_N}, N = n + depth - 1, for
// f = T, q_n, a constant and random series. DEPTH_EXCEEDS_TOWER if the depth
// cannot be reached, INSUFFICIENT_DEPTH if len > depth.
ThetaReport verify_theta_phi_iota(const LTGroup& G, int n, int depth, int len, int samples, uint64_t seed);

}  // namespace ltp
