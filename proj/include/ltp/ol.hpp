#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ltp/fq.hpp"

namespace ltp {

// O_L = W(F_q)[pi]/(E(pi)), W(F_q) = Z_p[x]/(lift of the Conway polynomial).
struct OLConfig {
  int p = 3;
  int f = 1;
  int e = 1;
  // Non-leading coefficients c_0..c_{e-1} of E(pi) = pi^e + sum c_i pi^i, each
  // an element of W(F_q) given by its x-coefficients. Empty means pi^e - p.
  std::vector<std::vector<int64_t>> eisenstein;
  // Degree-f modulus for F_q over F_p; empty means the Conway polynomial.
  PolyFp conway_override;

  std::string key() const;
};

class OLApprox;

class OLField {
 public:
  static const OLField* get(const OLConfig& cfg);

  const OLConfig& config() const { return cfg_; }
  int p() const { return p_; }
  int f() const { return f_; }
  int e() const { return e_; }
  int ef() const { return e_ * f_; }
  int64_t q() const { return q_; }
  int max_prec() const { return max_prec_; }
  int64_t pk(int k) const { return pk_[k]; }
  int digits_needed(int prec, int i) const { return prec <= i ? 0 : (prec - i + e_ - 1) / e_; }
  const PolyFp& residue_modulus() const { return conway_; }
  // Residue field tables when q <= 256, else null.
  const FqField* residue_field() const { return residue_.get(); }
  std::shared_ptr<const FqField> residue_field_ptr() const { return residue_; }

  const std::vector<int64_t>& unram_modulus() const { return unram_mod_; }
  const std::vector<std::vector<int64_t>>& eisenstein() const { return eis_; }
  const OLApprox& p_over_pi() const;
  std::string describe() const;

 private:
  explicit OLField(const OLConfig& cfg);
  void init_p_over_pi();

  OLConfig cfg_;
  int p_, f_, e_;
  int64_t q_;
  int K_;
  int max_prec_;
  std::vector<int64_t> pk_;
  PolyFp conway_;
  std::vector<int64_t> unram_mod_;
  std::vector<std::vector<int64_t>> eis_;
  std::shared_ptr<const FqField> residue_;
  std::unique_ptr<OLApprox> p_over_pi_;
};

// An element of O_L known modulo pi^prec. Coefficient c[i*f + j] multiplies
// x^j pi^i and is reduced modulo p^ceil((prec - i)/e).
class OLApprox {
 public:
  static constexpr int kMaxCoeffs = 8;

  OLApprox() = default;
  static OLApprox zero(const OLField* F, int prec);
  static OLApprox from_int(const OLField* F, int64_t n, int prec);
  // digits[k] is the integer coefficient of x^(k mod f) pi^(k div f); indices
  // past e*f are folded in through the Eisenstein relation.
  static OLApprox make(const OLField* F, const std::vector<int64_t>& digits, int prec);
  static OLApprox pi_power(const OLField* F, int k, int prec);
  // Digit lift of a residue field element given by its F_p coefficients.
  static OLApprox from_residue(const OLField* F, const std::vector<int>& coeffs, int prec);

  const OLField* field() const { return F_; }
  int prec() const { return prec_; }
  int64_t coeff(int k) const { return c_[k]; }
  std::vector<int64_t> digits() const;

  // Exact valuation of the representative, capped at prec.
  int valuation() const;
  bool is_zero() const;
  bool is_unit() const;
  // Residue class as F_p coefficient vector of length f.
  std::vector<int> residue() const;

  OLApprox operator+(const OLApprox& b) const;
  OLApprox operator-(const OLApprox& b) const;
  OLApprox operator-() const;
  OLApprox operator*(const OLApprox& b) const;
  OLApprox mul_int(int64_t n) const;
  OLApprox pow(uint64_t n) const;

  OLApprox with_prec(int P) const;
  // Treat the stored representative as exact and restate it at precision P.
  OLApprox lift_prec(int P) const;
  OLApprox div_pi(int k = 1) const;
  OLApprox inverse() const;
  // Exact quotient a/b; requires v(a) >= v(b) with b known to be nonzero.
  OLApprox div_exact(const OLApprox& b) const;

  bool equals(const OLApprox& b) const { return (*this - b).is_zero(); }
  // Balanced representative without the O(.) term.
  std::string repr() const;
  std::string str() const;

 private:
  void canonicalize();

  const OLField* F_ = nullptr;
  int prec_ = 0;
  std::array<int64_t, kMaxCoeffs> c_{};
};

OLApprox ol_make(const OLConfig& cfg, const std::vector<int64_t>& digits, int prec);
OLApprox val_divide_pi(const OLApprox& x, int k);
OLApprox teichmuller_lift(const OLField* F, const std::vector<int>& residue_coeffs, int prec);

}  // namespace ltp
