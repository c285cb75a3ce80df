#pragma once

#include <memory>
#include <vector>

#include "ltp/ring.hpp"

namespace ltp {

struct UnramData;

// W_L(F_{q^m}) = O_L[z]/(h(z)) modulo pi^P, where h is the Teichmuller lift of
// the first monic irreducible degree-m polynomial over F_q (nonzero constant
// term). The roots of h are roots of unity, so the q-Frobenius is z -> z^q.
class UnramExt {
 public:
  using Elem = std::vector<OLApprox>;

  UnramExt() = default;
  static UnramExt get(const OLField* F, int m, int P);

  int m() const;
  int prec() const { return P_; }
  int coeff_precision() const { return P_; }
  const OLField* ol() const;
  // Monic h over O_L, ascending, length m+1.
  const std::vector<OLApprox>& modulus() const;
  // Residue modulus over F_q as FqField indices.
  const std::vector<FqField::E>& residue_modulus() const;
  uint64_t residue_size() const;

  Elem zero() const;
  Elem one() const;
  Elem from_int(int64_t n) const;
  Elem from_ol(const OLApprox& c) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  bool eq(const Elem& a, const Elem& b) const;
  bool is_zero(const Elem& a) const;
  std::string str(const Elem& a) const;
  Elem frobenius(const Elem& a) const;
  Elem div_pi(const Elem& a) const;
  bool is_unit(const Elem& a) const;
  Elem inv(const Elem& a) const;
  Elem random(Rng& g) const;
  Elem z() const;
  Elem with_prec(const Elem& a, int P) const;
  Elem lift_prec(const Elem& a, int P) const;

  // Residue field F_{q^m}: index sum_i idx(a_i mod pi) q^i.
  uint64_t residue_index(const Elem& a) const;
  Elem from_residue_index(uint64_t idx) const;
  Elem teichmuller(const Elem& a) const;
  Elem teichmuller_of_index(uint64_t idx) const { return teichmuller(from_residue_index(idx)); }

  bool operator==(const UnramExt& o) const { return d_ == o.d_ && P_ == o.P_; }

 private:
  std::shared_ptr<const UnramData> d_;
  int P_ = 0;
};

// O_L-algebra embedding W_L(F_{q^m}) -> W_L(F_{q^{m'}}) commuting with Frobenius.
struct UnramEmbedding {
  UnramExt src, dst;
  UnramExt::Elem image_of_z;
  UnramExt::Elem operator()(const UnramExt::Elem& a) const;
};

UnramEmbedding unram_embedding(const UnramExt& src, const UnramExt& dst);

UnramExt::Elem unram_frobenius(const UnramExt& R, const UnramExt::Elem& x);

}  // namespace ltp
