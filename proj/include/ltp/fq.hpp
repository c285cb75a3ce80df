#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace ltp {

// Polynomials over F_p, ascending coefficients in [0, p).
using PolyFp = std::vector<int>;

namespace fp {

PolyFp trim(PolyFp a);
PolyFp add(const PolyFp& a, const PolyFp& b, int p);
PolyFp sub(const PolyFp& a, const PolyFp& b, int p);
PolyFp mul(const PolyFp& a, const PolyFp& b, int p);
PolyFp rem(PolyFp a, const PolyFp& m, int p);
PolyFp mulmod(const PolyFp& a, const PolyFp& b, const PolyFp& m, int p);
PolyFp powmod(const PolyFp& a, uint64_t e, const PolyFp& m, int p);
PolyFp gcd(PolyFp a, PolyFp b, int p);
int inv_mod(int a, int p);

bool is_irreducible(const PolyFp& m, int p);
// x generates (F_p[x]/m)^x; assumes m irreducible.
bool is_primitive(const PolyFp& m, int p);
// m_d(x^{(p^n-1)/(p^d-1)}) = 0 mod m for every proper divisor d of n = deg m.
bool is_conway_compatible(const PolyFp& m, int p);

std::vector<uint64_t> prime_factors(uint64_t n);
bool is_prime(int64_t n);

}  // namespace fp

uint64_t ipow(uint64_t b, unsigned e);

// Conway polynomial of degree n over F_p: built-in table, otherwise the
// standard search (first compatible primitive polynomial in Conway order).
PolyFp conway_polynomial(int p, int n);
PolyFp conway_search(int p, int n);
bool conway_in_table(int p, int n);
std::vector<std::pair<int, int>> conway_table_entries();

// F_q = F_p[x]/(modulus) with full operation tables. Elements are indices
// 0..q-1 encoding the coefficient vector in base p.
class FqField {
 public:
  using E = uint16_t;
  static constexpr int kMaxQ = 256;

  FqField(int p, int f, PolyFp modulus);
  static std::shared_ptr<const FqField> get(int p, int f);

  int p() const { return p_; }
  int f() const { return f_; }
  int q() const { return q_; }
  const PolyFp& modulus() const { return modulus_; }

  E add(E a, E b) const { return add_[a * q_ + b]; }
  E sub(E a, E b) const { return sub_[a * q_ + b]; }
  E neg(E a) const { return sub_[a]; }
  E mul(E a, E b) const { return mul_[a * q_ + b]; }
  E inv(E a) const;
  E pow(E a, uint64_t e) const;
  E from_int(int64_t n) const;
  E from_coeffs(const std::vector<int>& c) const;
  std::vector<int> coeffs(E a) const;
  // Class of x modulo the defining polynomial.
  E gen() const { return gen_; }
  std::string str(E a) const;

 private:
  int p_, f_, q_;
  PolyFp modulus_;
  E gen_ = 0;
  std::vector<E> add_, sub_, mul_, inv_;
};

}  // namespace ltp
