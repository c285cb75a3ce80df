#pragma once

#include <string>
#include <vector>

#include "ltp/unram.hpp"

namespace ltp {

using PhiVec = std::vector<UnramExt::Elem>;
using OLMatrix = std::vector<std::vector<OLApprox>>;

// Free module of rank r over W_{L,n}(F_{q^m}) = base with phi_M(v) = A phi(v).
struct PhiModule {
  UnramExt base;
  int r = 0;
  std::vector<std::vector<UnramExt::Elem>> A;

  static PhiModule make(const UnramExt& base, std::vector<std::vector<UnramExt::Elem>> A);
  static PhiModule identity(const UnramExt& base, int r);
  static PhiModule random_etale(const UnramExt& base, int r, Rng& g);

  int n() const { return base.prec(); }
  int m() const { return base.m(); }
  // log_q |M| = n m r
  int length() const { return n() * m() * r; }
  PhiVec zero() const;
  PhiVec apply(const PhiVec& v) const;
  bool is_fixed(const PhiVec& v) const;
  std::string str() const;
};

UnramExt::Elem phi_det(const PhiModule& M);
bool is_etale(const PhiModule& M);

// Direct sum of O_L/pi^v for v in exps (ascending, all positive).
struct FiniteModule {
  int64_t q = 0;
  std::vector<int> exps;
  // log_q of the order
  int length() const;
  uint64_t size() const;
  std::string str() const;
};

// Matrix of v -> A phi(v) - v on the O_L/pi^n-coordinates (entry i, power z^j)
// at flat index i*m + j; columns are images of basis vectors.
OLMatrix phi_minus_one_matrix(const PhiModule& M);

// P X Q = diag(pi^v_t u_t) over O_L/pi^n; vals[t] = n for zero pivots.
struct SmithForm {
  std::vector<int> vals;
  OLMatrix Q;
};
SmithForm smith_form(OLMatrix X, int n);

struct FixedPoints {
  FiniteModule module;
  // gens[t] has annihilator pi^module.exps[t]
  std::vector<PhiVec> gens;
};

FixedPoints fixed_points(const PhiModule& M);

struct HerrCohomology {
  FiniteModule h0, h1;
};
HerrCohomology herr_h0_h1(const PhiModule& M);

PhiModule base_change(const PhiModule& M, int m2);

struct Stabilization {
  bool reached = false;
  int m_star = 0;
  // log_q |fixed| after base change to degree m * s, s = 1, 2, ...; monotone
  // along divisibility of s
  std::vector<int> length_trace;
};
Stabilization stabilization_check(const PhiModule& M, int max_steps);

// Enumeration helpers; refuse modules with more than 2^20 elements.
std::vector<PhiVec> enumerate_module(const PhiModule& M);
std::vector<PhiVec> brute_force_fixed(const PhiModule& M);
std::vector<PhiVec> span_of(const PhiModule& M, const FixedPoints& fp);
std::string vec_key(const PhiVec& v);
// Elements of O_L/pi^v for v <= n, as sum_i lift(d_i) pi^i.
std::vector<OLApprox> enumerate_ol(const OLField* F, int v, int n);

}  // namespace ltp
