#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "ltp/series.hpp"

namespace ltp {

enum class LTPreset { Standard, Cyclotomic, Explicit };

// A Lubin-Tate formal O_L-module over O_L given by a Frobenius polynomial f
// with f = pi*T mod deg 2 and f = T^q mod pi. Series are truncated at T^N
// and carry coefficient precision P.
class LTGroup {
 public:
  // f = pi*T + T^q.
  static std::shared_ptr<const LTGroup> standard(const OLField* F, int N, int P);
  // f = (1+T)^p - 1; requires O_L = Z_p.
  static std::shared_ptr<const LTGroup> cyclotomic(const OLField* F, int N, int P);
  // f given by ascending coefficients (each a digit vector over O_L).
  static std::shared_ptr<const LTGroup> make(const OLField* F, const std::vector<OLApprox>& f, int N, int P);

  const OLField* field() const { return F_; }
  int N() const { return N_; }
  int P() const { return P_; }
  // Internal working precision; results are exact modulo pi^P.
  int work_prec() const { return W_; }
  const OLSeriesRing& ring() const { return S_; }
  const OLSeries& frobenius_series() const { return fs_; }
  const std::vector<OLApprox>& frobenius_poly() const { return fpoly_; }
  std::string describe() const;

  // Homogeneous components: law()[d][a] is the coefficient of X^a Y^(d-a).
  const std::vector<std::vector<OLApprox>>& law() const;
  MSeriesRing<OLRing>::Elem law_series(const MSeriesRing<OLRing>& M2) const;
  // F(A(T), B(T)) for series without constant term.
  OLSeries law_apply(const OLSeries& A, const OLSeries& B) const;

  // [a](T) mod pi^P for the given representative of a; high-degree
  // coefficients depend on digits of a beyond P.
  OLSeries endo(const OLApprox& a) const;
  // [pi^k](T) as the k-fold composite of f.
  OLSeries pi_power_endo(int k) const;
  OLSeries qn(int n) const;
  // f(T) -> f([u](T)).
  OLSeries gamma(const OLSeries& g, const OLApprox& u) const;
  // Q with q_n([u](T)) = q_n(T) * Q, Q = h_u([pi^n](T)) / h_u([pi^(n-1)](T))
  // where h_u(Y) = [u](Y)/Y; verified before returning.
  OLSeries gamma_qn_quotient(int n, const OLApprox& u) const;
  // (A, B) with pi = A*q_n + B*q_{n+1}.
  std::pair<OLSeries, OLSeries> prism_witness(int n) const;
  // w(T) with pi = q_1(T) + T*w(T).
  OLSeries q1_witness() const;

  LTGroup(const OLField* F, std::vector<OLApprox> f, int N, int P);

 private:
  std::vector<OLApprox> solve_endo(const OLApprox& a) const;

  const OLField* F_;
  int N_, P_, W_;
  std::vector<OLApprox> fpoly_;  // exact at W
  OLSeriesRing S_;
  OLSeries fs_;
  // powers of f truncated at N, at precision W: fpow_[i][d]
  std::vector<std::vector<OLApprox>> fpow_;

  mutable std::mutex mu_;
  mutable std::vector<std::vector<OLApprox>> law_;
  mutable std::map<std::vector<int64_t>, OLSeries> endo_cache_;
  mutable std::map<int, OLSeries> pi_cache_;
};

// Number of digits lost by the degree-by-degree solver below degree N.
int lt_precision_loss(int64_t q, int N);

}  // namespace ltp
