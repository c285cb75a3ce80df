#include "ltp/ol.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "ltp/error.hpp"

namespace ltp {

namespace {

inline int64_t mmul(int64_t a, int64_t b, int64_t m) {
  if (m <= (int64_t(1) << 31)) return (a * b) % m;
  return int64_t((unsigned __int128)uint64_t(a) * uint64_t(b) % uint64_t(m));
}
inline int64_t mred(int64_t a, int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}
inline int vp(int64_t x, int p) {
  int v = 0;
  if (p == 2) return __builtin_ctzll(uint64_t(x));
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

// out = a*b in W(F_q) mod m; a, b, out have length f and are reduced mod m.
void unram_mul(const OLField* F, const int64_t* a, const int64_t* b, int64_t* out, int64_t m) {
  int f = F->f();
  if (f == 1) {
    out[0] = mmul(a[0], b[0], m);
    return;
  }
  int64_t t[2 * OLApprox::kMaxCoeffs] = {};
  for (int i = 0; i < f; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < f; ++j) t[i + j] = (t[i + j] + mmul(a[i], b[j], m)) % m;
  }
  const auto& mod = F->unram_modulus();
  for (int d = 2 * f - 2; d >= f; --d) {
    int64_t c = t[d];
    if (!c) continue;
    for (int j = 0; j < f; ++j) t[d - f + j] = mred(t[d - f + j] - mmul(c, mod[j] % m, m), m);
    t[d] = 0;
  }
  for (int i = 0; i < f; ++i) out[i] = t[i];
}

std::mutex& field_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

std::string OLConfig::key() const {
  std::ostringstream os;
  os << p << "," << f << "," << e << "|";
  for (const auto& c : eisenstein) {
    os << "[";
    for (auto v : c) os << v << " ";
    os << "]";
  }
  os << "|";
  for (int v : conway_override) os << v << " ";
  return os.str();
}

const OLField* OLField::get(const OLConfig& cfg) {
  static std::map<std::string, std::unique_ptr<OLField>> reg;
  std::string k = cfg.key();
  {
    std::lock_guard<std::mutex> lk(field_mutex());
    auto it = reg.find(k);
    if (it != reg.end()) return it->second.get();
  }
  std::unique_ptr<OLField> fld(new OLField(cfg));
  std::lock_guard<std::mutex> lk(field_mutex());
  auto it = reg.find(k);
  if (it != reg.end()) return it->second.get();
  return reg.emplace(k, std::move(fld)).first->second.get();
}

OLField::OLField(const OLConfig& cfg) : cfg_(cfg), p_(cfg.p), f_(cfg.f), e_(cfg.e) {
  require(fp::is_prime(p_), Code::BadConfig, "p must be prime");
  require(f_ >= 1 && e_ >= 1, Code::BadConfig, "f and e must be positive");
  require(e_ * f_ <= OLApprox::kMaxCoeffs, Code::BadConfig, "e*f exceeds supported size");
  conway_ = cfg.conway_override.empty() ? conway_polynomial(p_, f_) : fp::trim(cfg.conway_override);
  require(int(conway_.size()) == f_ + 1 && conway_.back() == 1, Code::BadConfig,
          "residue modulus must be monic of degree f");
  require(fp::is_irreducible(conway_, p_), Code::BadConfig, "residue modulus is reducible");
  q_ = int64_t(ipow(uint64_t(p_), unsigned(f_)));
  if (q_ <= FqField::kMaxQ) residue_ = std::make_shared<const FqField>(p_, f_, conway_);
  K_ = 0;
  pk_ = {1};
  while (pk_.back() < (int64_t(1) << 62) / p_) {
    pk_.push_back(pk_.back() * p_);
    ++K_;
  }
  max_prec_ = e_ * (K_ - 2);
  int64_t M = pk_[K_];
  for (int v : conway_) unram_mod_.push_back(v);

  if (cfg.eisenstein.empty()) {
    eis_.assign(e_, std::vector<int64_t>(f_, 0));
    eis_[0][0] = M - p_;
  } else {
    require(int(cfg.eisenstein.size()) == e_, Code::BadConfig, "eisenstein_coeffs must have e entries");
    for (const auto& c : cfg.eisenstein) {
      require(int(c.size()) <= f_, Code::BadConfig, "Eisenstein coefficient longer than f");
      std::vector<int64_t> v(f_, 0);
      for (size_t j = 0; j < c.size(); ++j) v[j] = mred(c[j], M);
      eis_.push_back(v);
    }
  }
  for (const auto& c : eis_)
    for (auto v : c) require(v % p_ == 0, Code::BadConfig, "non-Eisenstein modulus: coefficient not divisible by p");
  bool unit_const = false;
  for (auto v : eis_[0]) unit_const |= (v % (int64_t(p_) * p_) != 0);
  require(unit_const, Code::BadConfig, "non-Eisenstein modulus: constant term not p times a unit");
  init_p_over_pi();
}

void OLField::init_p_over_pi() {
  // E(pi) = 0 gives p/pi = -(pi^{e-1} + sum_{j>=1} c_j pi^{j-1}) / (c_0/p).
  int P = max_prec_;
  std::vector<int64_t> u0d(f_);
  for (int j = 0; j < f_; ++j) u0d[j] = eis_[0][j] / p_;
  OLApprox u0 = OLApprox::make(this, u0d, P);
  OLApprox s = OLApprox::pi_power(this, e_ - 1, P);
  for (int j = 1; j < e_; ++j) {
    std::vector<int64_t> cj(eis_[j].begin(), eis_[j].end());
    s = s + OLApprox::make(this, cj, P) * OLApprox::pi_power(this, j - 1, P);
  }
  p_over_pi_ = std::make_unique<OLApprox>(-(s * u0.inverse()));
}

const OLApprox& OLField::p_over_pi() const { return *p_over_pi_; }

std::string OLField::describe() const {
  std::ostringstream os;
  os << "O_L(p=" << p_ << ", f=" << f_ << ", e=" << e_ << ")";
  return os.str();
}

void OLApprox::canonicalize() {
  int e = F_->e(), f = F_->f();
  for (int i = 0; i < e; ++i) {
    int64_t m = F_->pk(F_->digits_needed(prec_, i));
    for (int j = 0; j < f; ++j) c_[i * f + j] = (m == 1) ? 0 : mred(c_[i * f + j], m);
  }
}

OLApprox OLApprox::zero(const OLField* F, int prec) {
  OLApprox r;
  r.F_ = F;
  r.prec_ = std::min(prec, F->max_prec());
  return r;
}

OLApprox OLApprox::from_int(const OLField* F, int64_t n, int prec) {
  OLApprox r = zero(F, prec);
  r.c_[0] = n;
  r.canonicalize();
  return r;
}

OLApprox OLApprox::pi_power(const OLField* F, int k, int prec) {
  if (k >= prec) return zero(F, prec);
  if (k < F->e()) {
    OLApprox r = zero(F, prec);
    r.c_[k * F->f()] = 1;
    r.canonicalize();
    return r;
  }
  OLApprox pi;
  if (F->e() >= 2) {
    pi = pi_power(F, 1, prec);
  } else {
    pi = zero(F, prec);
    for (int j = 0; j < F->f(); ++j) pi.c_[j] = -F->eisenstein()[0][j];
    pi.canonicalize();
  }
  return pi.pow(uint64_t(k));
}

OLApprox OLApprox::make(const OLField* F, const std::vector<int64_t>& digits, int prec) {
  require(prec >= 1, Code::InvalidArgument, "precision must be at least 1");
  require(prec <= F->max_prec(), Code::InvalidArgument, "precision exceeds field capacity");
  int e = F->e(), f = F->f();
  OLApprox r = zero(F, prec);
  OLApprox extra = zero(F, prec);
  bool has_extra = false;
  for (size_t k = 0; k < digits.size(); ++k) {
    if (!digits[k]) continue;
    int i = int(k) / f, j = int(k) % f;
    if (i < e) {
      r.c_[i * f + j] = mred(r.c_[i * f + j] + mred(digits[k], F->pk(F->digits_needed(prec, 0))),
                             F->pk(F->digits_needed(prec, 0)));
    } else {
      OLApprox t = zero(F, prec);
      t.c_[j] = digits[k];
      t.canonicalize();
      extra = extra + t * pi_power(F, i, prec);
      has_extra = true;
    }
  }
  r.canonicalize();
  return has_extra ? r + extra : r;
}

OLApprox OLApprox::from_residue(const OLField* F, const std::vector<int>& coeffs, int prec) {
  OLApprox r = zero(F, prec);
  for (size_t j = 0; j < coeffs.size() && int(j) < F->f(); ++j) r.c_[j] = mred(coeffs[j], F->p());
  r.canonicalize();
  return r;
}

std::vector<int64_t> OLApprox::digits() const { return std::vector<int64_t>(c_.begin(), c_.begin() + F_->ef()); }

int OLApprox::valuation() const {
  int e = F_->e(), f = F_->f(), p = F_->p();
  int v = prec_;
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < f; ++j) {
      int64_t c = c_[i * f + j];
      if (c) v = std::min(v, e * vp(c, p) + i);
    }
  return v;
}

bool OLApprox::is_zero() const {
  for (int k = 0; k < F_->ef(); ++k)
    if (c_[k]) return false;
  return true;
}

bool OLApprox::is_unit() const {
  if (prec_ < 1) return false;
  for (int j = 0; j < F_->f(); ++j)
    if (c_[j] % F_->p()) return true;
  return false;
}

std::vector<int> OLApprox::residue() const {
  std::vector<int> r(F_->f(), 0);
  if (prec_ < 1) return r;
  for (int j = 0; j < F_->f(); ++j) r[j] = int(c_[j] % F_->p());
  return r;
}

OLApprox OLApprox::operator+(const OLApprox& b) const {
  OLApprox r = zero(F_, std::min(prec_, b.prec_));
  int64_t m = F_->pk(F_->digits_needed(r.prec_, 0));
  for (int k = 0; k < F_->ef(); ++k) r.c_[k] = (c_[k] % m + b.c_[k] % m) % m;
  r.canonicalize();
  return r;
}

OLApprox OLApprox::operator-(const OLApprox& b) const {
  OLApprox r = zero(F_, std::min(prec_, b.prec_));
  int64_t m = F_->pk(F_->digits_needed(r.prec_, 0));
  for (int k = 0; k < F_->ef(); ++k) r.c_[k] = mred(c_[k] % m - b.c_[k] % m, m);
  r.canonicalize();
  return r;
}

OLApprox OLApprox::operator-() const {
  OLApprox r = zero(F_, prec_);
  int64_t m = F_->pk(F_->digits_needed(prec_, 0));
  for (int k = 0; k < F_->ef(); ++k) r.c_[k] = mred(-c_[k], m);
  r.canonicalize();
  return r;
}

OLApprox OLApprox::operator*(const OLApprox& b) const {
  // Known mod pi^min(Pa + v(b), Pb + v(a)); capped at max(Pa, Pb).
  int P;
  if (prec_ == b.prec_) {
    P = prec_;
  } else if (prec_ < b.prec_) {
    P = std::min(b.prec_, prec_ + b.valuation());
  } else {
    P = std::min(prec_, b.prec_ + valuation());
  }
  OLApprox r = zero(F_, P);
  int64_t m = F_->pk(F_->digits_needed(P, 0));
  if (m == 1) return r;
  if (F_->ef() == 1) {
    r.c_[0] = mmul(c_[0] % m, b.c_[0] % m, m);
    return r;
  }
  int e = F_->e(), f = F_->f();
  int64_t A[kMaxCoeffs], B[kMaxCoeffs];
  for (int k = 0; k < e * f; ++k) {
    A[k] = c_[k] % m;
    B[k] = b.c_[k] % m;
  }
  int64_t U[2 * kMaxCoeffs][kMaxCoeffs] = {};
  int64_t tmp[kMaxCoeffs];
  for (int ia = 0; ia < e; ++ia)
    for (int ib = 0; ib < e; ++ib) {
      unram_mul(F_, A + ia * f, B + ib * f, tmp, m);
      for (int j = 0; j < f; ++j) U[ia + ib][j] = (U[ia + ib][j] + tmp[j]) % m;
    }
  const auto& eis = F_->eisenstein();
  for (int k = 2 * e - 2; k >= e; --k) {
    bool nz = false;
    for (int j = 0; j < f; ++j) nz |= U[k][j] != 0;
    if (!nz) continue;
    for (int i = 0; i < e; ++i) {
      int64_t ci[kMaxCoeffs];
      for (int j = 0; j < f; ++j) ci[j] = eis[i][j] % m;
      unram_mul(F_, U[k], ci, tmp, m);
      for (int j = 0; j < f; ++j) U[k - e + i][j] = mred(U[k - e + i][j] - tmp[j], m);
    }
  }
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < f; ++j) r.c_[i * f + j] = U[i][j];
  r.canonicalize();
  return r;
}

OLApprox OLApprox::mul_int(int64_t n) const { return *this * from_int(F_, n, F_->max_prec()); }

OLApprox OLApprox::pow(uint64_t n) const {
  OLApprox r = from_int(F_, 1, prec_), b = *this;
  for (; n; n >>= 1) {
    if (n & 1) r = r * b;
    if (n > 1) b = b * b;
  }
  return r;
}

OLApprox OLApprox::with_prec(int P) const {
  if (P >= prec_) return *this;
  OLApprox r = *this;
  r.prec_ = std::max(P, 0);
  r.canonicalize();
  return r;
}

OLApprox OLApprox::lift_prec(int P) const {
  OLApprox r = *this;
  r.prec_ = std::min(std::max(P, 0), F_->max_prec());
  if (r.prec_ < prec_) r.canonicalize();
  return r;
}

OLApprox OLApprox::div_pi(int k) const {
  require(k >= 0, Code::InvalidArgument, "negative shift");
  if (k == 0) return *this;
  require(prec_ >= k, Code::InsufficientPrecision,
          "element known mod pi^" + std::to_string(prec_) + " cannot be divided by pi^" + std::to_string(k));
  if (!is_zero()) {
    int v = valuation();
    require(v >= k, Code::Indivisible,
            "valuation " + std::to_string(v) + " < " + std::to_string(k) + " for " + str());
  }
  int e = F_->e(), f = F_->f(), p = F_->p();
  OLApprox x = *this;
  for (int s = 0; s < k; ++s) {
    OLApprox shifted = zero(F_, x.prec_ - 1);
    for (int i = 1; i < e; ++i)
      for (int j = 0; j < f; ++j) shifted.c_[(i - 1) * f + j] = x.c_[i * f + j];
    shifted.canonicalize();
    int d0 = F_->digits_needed(x.prec_, 0);
    if (d0 <= 1) {
      x = shifted;
      continue;
    }
    OLApprox a0 = zero(F_, e * (d0 - 1));
    for (int j = 0; j < f; ++j) a0.c_[j] = x.c_[j] / p;
    a0.canonicalize();
    x = (shifted + a0 * F_->p_over_pi()).with_prec(x.prec_ - 1);
  }
  return x;
}

OLApprox OLApprox::inverse() const {
  require(is_unit(), Code::NotUnit, "element " + str() + " is not a unit");
  int p = F_->p();
  PolyFp r = residue();
  PolyFp inv = fp::powmod(r, uint64_t(F_->q() - 2), F_->residue_modulus(), p);
  if (F_->q() == 2) inv = {1};
  OLApprox y = from_residue(F_, inv, 1);
  int cur = 1;
  OLApprox two = from_int(F_, 2, F_->max_prec());
  while (cur < prec_) {
    cur = std::min(2 * cur, prec_);
    y = y.lift_prec(cur);
    OLApprox a = with_prec(cur);
    y = (y * (two.with_prec(cur) - a * y)).with_prec(cur);
  }
  return y.with_prec(prec_);
}

OLApprox OLApprox::div_exact(const OLApprox& b) const {
  if (b.is_unit()) return *this * b.inverse();
  require(!b.is_zero(), Code::InsufficientPrecision, "division by an element indistinguishable from 0");
  int v = b.valuation();
  return div_pi(v) * b.div_pi(v).inverse();
}

std::string OLApprox::str() const {
  if (!F_) return "<null>";
  if (F_->e() == 1) return repr() + " + O(" + std::to_string(F_->p()) + "^" + std::to_string(prec_) + ")";
  return repr() + " + O(pi^" + std::to_string(prec_) + ")";
}

std::string OLApprox::repr() const {
  if (!F_) return "<null>";
  int e = F_->e(), f = F_->f();
  auto bal = [&](int i, int64_t c) {
    int64_t mi = F_->pk(F_->digits_needed(prec_, i));
    return c > mi / 2 ? c - mi : c;
  };
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < f; ++j) {
      int64_t c = bal(i, c_[i * f + j]);
      if (!c) continue;
      std::string mono;
      if (j > 0) mono += "x" + (j > 1 ? "^" + std::to_string(j) : std::string());
      if (i > 0) mono += (mono.empty() ? "" : "*") + std::string("pi") + (i > 1 ? "^" + std::to_string(i) : "");
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      first = false;
      int64_t a = c < 0 ? -c : c;
      if (mono.empty()) os << a;
      else if (a == 1) os << mono;
      else os << a << "*" << mono;
    }
  if (first) os << "0";
  return os.str();
}

OLApprox ol_make(const OLConfig& cfg, const std::vector<int64_t>& digits, int prec) {
  return OLApprox::make(OLField::get(cfg), digits, prec);
}

OLApprox val_divide_pi(const OLApprox& x, int k) { return x.div_pi(k); }

OLApprox teichmuller_lift(const OLField* F, const std::vector<int>& residue_coeffs, int prec) {
  OLApprox t = OLApprox::from_residue(F, residue_coeffs, prec);
  for (int i = 0; i < prec; ++i) t = t.pow(uint64_t(F->q()));
  return t;
}

}  // namespace ltp
