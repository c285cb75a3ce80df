#include "ltp/unram.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace ltp {

namespace {

using FE = FqField::E;
using PolyFq = std::vector<FE>;

PolyFq fq_trim(PolyFq a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

PolyFq fq_rem(const FqField& k, PolyFq a, const PolyFq& m) {
  a = fq_trim(a);
  int dm = int(m.size()) - 1;
  FE li = k.inv(m.back());
  for (int d = int(a.size()) - 1; d >= dm; --d) {
    FE c = k.mul(a[d], li);
    if (!c) continue;
    for (int j = 0; j <= dm; ++j) a[d - dm + j] = k.sub(a[d - dm + j], k.mul(c, m[j]));
  }
  if (int(a.size()) > dm) a.resize(dm);
  return fq_trim(a);
}

PolyFq fq_mulmod(const FqField& k, const PolyFq& a, const PolyFq& b, const PolyFq& m) {
  if (a.empty() || b.empty()) return {};
  PolyFq r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = k.add(r[i + j], k.mul(a[i], b[j]));
  return fq_rem(k, r, m);
}

PolyFq fq_powmod(const FqField& k, PolyFq a, uint64_t e, const PolyFq& m) {
  PolyFq r = fq_rem(k, {1}, m);
  a = fq_rem(k, a, m);
  for (; e; e >>= 1) {
    if (e & 1) r = fq_mulmod(k, r, a, m);
    if (e > 1) a = fq_mulmod(k, a, a, m);
  }
  return r;
}

PolyFq fq_sub(const FqField& k, PolyFq a, const PolyFq& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = k.sub(a[i], b[i]);
  return fq_trim(a);
}

PolyFq fq_gcd(const FqField& k, PolyFq a, PolyFq b) {
  a = fq_trim(a);
  b = fq_trim(b);
  while (!b.empty()) {
    PolyFq r = fq_rem(k, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool fq_irreducible(const FqField& k, const PolyFq& h) {
  int n = int(h.size()) - 1;
  if (n == 1) return true;
  auto zq = [&](int times) {
    PolyFq y = {0, 1};
    for (int i = 0; i < times; ++i) y = fq_powmod(k, y, uint64_t(k.q()), h);
    return y;
  };
  if (!fq_sub(k, zq(n), fq_rem(k, {0, 1}, h)).empty()) return false;
  for (uint64_t r : fp::prime_factors(uint64_t(n)))
    if (fq_gcd(k, h, fq_sub(k, zq(n / int(r)), {0, 1})).size() != 1) return false;
  return true;
}

PolyFq first_irreducible(const FqField& k, int m) {
  int q = k.q();
  std::vector<int> a(m, 0);
  a[0] = 1;
  while (true) {
    PolyFq h(m + 1);
    for (int i = 0; i < m; ++i) h[i] = FE(a[i]);
    h[m] = 1;
    if (fq_irreducible(k, h)) return h;
    int i = 0;
    while (i < m && a[i] == q - 1) a[i++] = 0;
    require(i < m, Code::IntegrityFailure, "no irreducible polynomial found");
    ++a[i];
    if (a[0] == 0) a[0] = 1;
  }
}

}  // namespace

struct UnramData {
  const OLField* F;
  int m;
  int P;
  uint64_t Q;
  PolyFq hbar;
  std::vector<OLApprox> h;
  std::vector<UnramExt::Elem> frob;
};

namespace {

// Arithmetic on coefficient vectors modulo a monic h, used before the data is complete.
std::vector<OLApprox> poly_mulmod(const std::vector<OLApprox>& a, const std::vector<OLApprox>& b,
                                  const std::vector<OLApprox>& h, const OLField* F, int P) {
  int m = int(h.size()) - 1;
  std::vector<OLApprox> t(2 * m - 1, OLApprox::zero(F, P));
  for (int i = 0; i < m; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; j < m; ++j) t[i + j] = t[i + j] + a[i] * b[j];
  }
  for (int d = 2 * m - 2; d >= m; --d) {
    if (t[d].is_zero()) continue;
    for (int j = 0; j < m; ++j) t[d - m + j] = t[d - m + j] - t[d] * h[j];
  }
  t.resize(m);
  return t;
}

std::vector<OLApprox> poly_powmod(std::vector<OLApprox> a, uint64_t e, const std::vector<OLApprox>& h,
                                  const OLField* F, int P) {
  int m = int(h.size()) - 1;
  std::vector<OLApprox> r(m, OLApprox::zero(F, P));
  r[0] = OLApprox::from_int(F, 1, P);
  if (m == 1) {
    OLApprox x = a[0], acc = r[0];
    for (; e; e >>= 1) {
      if (e & 1) acc = acc * x;
      if (e > 1) x = x * x;
    }
    return {acc};
  }
  for (; e; e >>= 1) {
    if (e & 1) r = poly_mulmod(r, a, h, F, P);
    if (e > 1) a = poly_mulmod(a, a, h, F, P);
  }
  return r;
}

std::shared_ptr<const UnramData> build(const OLField* F, int m, int P) {
  require(m >= 1, Code::InvalidArgument, "extension degree must be positive");
  const FqField* k = F->residue_field();
  require(k != nullptr, Code::InvalidArgument, "unramified extensions need q <= 256");
  auto d = std::make_shared<UnramData>();
  d->F = F;
  d->m = m;
  d->P = P;
  require(double(m) * std::log2(double(F->q())) < 62.0, Code::InvalidArgument, "q^m exceeds 2^62");
  d->Q = ipow(uint64_t(F->q()), unsigned(m));
  d->hbar = first_irreducible(*k, m);
  std::vector<OLApprox> h(m + 1);
  for (int i = 0; i <= m; ++i) h[i] = OLApprox::from_residue(F, k->coeffs(d->hbar[i]), P);
  OLRing R(F, P);
  // Replace the roots r by r^Q until they are Teichmuller: charpoly of z^Q.
  for (int it = 0; it <= P; ++it) {
    std::vector<OLApprox> z(m, OLApprox::zero(F, P));
    if (m > 1) z[1] = OLApprox::from_int(F, 1, P);
    else z[0] = -h[0];
    std::vector<OLApprox> w = poly_powmod(z, d->Q, h, F, P);
    std::vector<std::vector<OLApprox>> M(m, std::vector<OLApprox>(m, OLApprox::zero(F, P)));
    std::vector<OLApprox> col = w;
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < m; ++i) M[i][j] = col[i];
      std::vector<OLApprox> zc(m, OLApprox::zero(F, P));
      if (m > 1) {
        zc[1] = OLApprox::from_int(F, 1, P);
        col = poly_mulmod(col, zc, h, F, P);
      }
    }
    std::vector<OLApprox> cp = charpoly(R, M);
    std::vector<OLApprox> nh(m + 1);
    for (int i = 0; i <= m; ++i) nh[i] = cp[m - i];
    bool same = true;
    for (int i = 0; i <= m; ++i) same &= nh[i].equals(h[i]);
    h = nh;
    if (same) break;
  }
  d->h = h;
  std::vector<OLApprox> z(m, OLApprox::zero(F, P));
  if (m > 1) z[1] = OLApprox::from_int(F, 1, P);
  else z[0] = -h[0];
  std::vector<OLApprox> zq = poly_powmod(z, uint64_t(F->q()), h, F, P);
  std::vector<OLApprox> acc(m, OLApprox::zero(F, P));
  acc[0] = OLApprox::from_int(F, 1, P);
  for (int i = 0; i < m; ++i) {
    d->frob.push_back(acc);
    acc = m > 1 ? poly_mulmod(acc, zq, h, F, P) : std::vector<OLApprox>{acc[0] * zq[0]};
  }
  return d;
}

std::mutex& reg_mutex() {
  static std::mutex mu;
  return mu;
}

}  // namespace

UnramExt UnramExt::get(const OLField* F, int m, int P) {
  static std::map<std::tuple<const OLField*, int, int>, std::shared_ptr<const UnramData>> reg;
  UnramExt r;
  r.P_ = P;
  {
    std::lock_guard<std::mutex> lk(reg_mutex());
    auto it = reg.find({F, m, P});
    if (it != reg.end()) {
      r.d_ = it->second;
      return r;
    }
  }
  auto d = build(F, m, P);
  std::lock_guard<std::mutex> lk(reg_mutex());
  r.d_ = reg.emplace(std::make_tuple(F, m, P), d).first->second;
  return r;
}

int UnramExt::m() const { return d_->m; }
const OLField* UnramExt::ol() const { return d_->F; }
const std::vector<OLApprox>& UnramExt::modulus() const { return d_->h; }
const std::vector<FqField::E>& UnramExt::residue_modulus() const { return d_->hbar; }
uint64_t UnramExt::residue_size() const { return d_->Q; }

UnramExt::Elem UnramExt::zero() const { return Elem(d_->m, OLApprox::zero(d_->F, P_)); }
UnramExt::Elem UnramExt::one() const { return from_int(1); }
UnramExt::Elem UnramExt::from_int(int64_t n) const {
  Elem r = zero();
  r[0] = OLApprox::from_int(d_->F, n, P_);
  return r;
}
UnramExt::Elem UnramExt::from_ol(const OLApprox& c) const {
  Elem r = zero();
  r[0] = c.with_prec(P_);
  return r;
}
UnramExt::Elem UnramExt::add(const Elem& a, const Elem& b) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
UnramExt::Elem UnramExt::sub(const Elem& a, const Elem& b) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
UnramExt::Elem UnramExt::neg(const Elem& a) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}
UnramExt::Elem UnramExt::mul(const Elem& a, const Elem& b) const {
  if (d_->m == 1) return {a[0] * b[0]};
  return poly_mulmod(a, b, d_->h, d_->F, P_);
}
bool UnramExt::eq(const Elem& a, const Elem& b) const {
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].equals(b[i])) return false;
  return true;
}
bool UnramExt::is_zero(const Elem& a) const {
  for (const auto& c : a)
    if (!c.is_zero()) return false;
  return true;
}
std::string UnramExt::str(const Elem& a) const {
  std::ostringstream os;
  os << "[";
  int P = P_;
  for (size_t i = 0; i < a.size(); ++i) {
    os << (i ? ", " : "") << a[i].repr();
    P = std::min(P, a[i].prec());
  }
  os << "] + O(" << (d_->F->e() == 1 ? std::to_string(d_->F->p()) : std::string("pi")) << "^" << P << ")";
  return os.str();
}
UnramExt::Elem UnramExt::frobenius(const Elem& a) const {
  Elem r = zero();
  for (int i = 0; i < d_->m; ++i) {
    if (a[i].is_zero() && a[i].prec() >= P_) continue;
    for (int j = 0; j < d_->m; ++j) r[j] = r[j] + a[i] * d_->frob[i][j];
  }
  return r;
}
UnramExt::Elem UnramExt::div_pi(const Elem& a) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i].div_pi(1);
  return r;
}
bool UnramExt::is_unit(const Elem& a) const {
  for (const auto& c : a)
    if (c.prec() >= 1 && !c.with_prec(1).is_zero()) return true;
  return false;
}
UnramExt::Elem UnramExt::inv(const Elem& a) const {
  require(is_unit(a), Code::NotUnit, "element of W_L(F_{q^m}) is not a unit");
  UnramExt R1 = get(d_->F, d_->m, 1);
  Elem a1 = with_prec(a, 1);
  Elem y = ring_pow(R1, a1, d_->Q - 2);
  int cur = 1;
  while (cur < P_) {
    cur = std::min(2 * cur, P_);
    UnramExt Rc = get(d_->F, d_->m, cur);
    y = lift_prec(y, cur);
    Elem ac = with_prec(a, cur);
    y = Rc.mul(y, Rc.sub(Rc.from_int(2), Rc.mul(ac, y)));
  }
  return y;
}
UnramExt::Elem UnramExt::random(Rng& g) const {
  OLRing R(d_->F, P_);
  Elem r(d_->m);
  for (auto& c : r) c = R.random(g);
  return r;
}
UnramExt::Elem UnramExt::z() const {
  Elem r = zero();
  if (d_->m > 1) r[1] = OLApprox::from_int(d_->F, 1, P_);
  else r[0] = -d_->h[0].with_prec(P_);
  return r;
}
UnramExt::Elem UnramExt::with_prec(const Elem& a, int P) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i].with_prec(P);
  return r;
}
UnramExt::Elem UnramExt::lift_prec(const Elem& a, int P) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i].lift_prec(P);
  return r;
}

uint64_t UnramExt::residue_index(const Elem& a) const {
  const FqField* k = d_->F->residue_field();
  uint64_t idx = 0;
  for (int i = d_->m - 1; i >= 0; --i) idx = idx * uint64_t(k->q()) + k->from_coeffs(a[i].residue());
  return idx;
}

UnramExt::Elem UnramExt::from_residue_index(uint64_t idx) const {
  const FqField* k = d_->F->residue_field();
  Elem r = zero();
  for (int i = 0; i < d_->m; ++i) {
    r[i] = OLApprox::from_residue(d_->F, k->coeffs(FqField::E(idx % uint64_t(k->q()))), P_);
    idx /= uint64_t(k->q());
  }
  return r;
}

UnramExt::Elem UnramExt::teichmuller(const Elem& a) const {
  Elem t = lift_prec(with_prec(a, 1), P_);
  for (int i = 0; i < P_; ++i) t = ring_pow(*this, t, d_->Q);
  return t;
}

UnramExt::Elem UnramEmbedding::operator()(const UnramExt::Elem& a) const {
  UnramExt::Elem r = dst.zero(), zp = dst.one();
  for (int i = 0; i < src.m(); ++i) {
    r = dst.add(r, dst.mul(dst.from_ol(a[i]), zp));
    zp = dst.mul(zp, image_of_z);
  }
  return r;
}

UnramEmbedding unram_embedding(const UnramExt& src, const UnramExt& dst) {
  require(src.ol() == dst.ol(), Code::RingMismatch, "embedding needs a common O_L");
  require(dst.m() % src.m() == 0, Code::NonMultiple,
          "degree " + std::to_string(dst.m()) + " is not a multiple of " + std::to_string(src.m()));
  UnramExt d1 = UnramExt::get(dst.ol(), dst.m(), 1);
  for (uint64_t idx = 0; idx < d1.residue_size(); ++idx) {
    UnramExt::Elem r = d1.from_residue_index(idx);
    UnramExt::Elem acc = d1.zero();
    for (int i = src.m(); i >= 0; --i) acc = d1.add(d1.mul(acc, r), d1.from_ol(src.modulus()[i]));
    if (d1.is_zero(acc)) {
      UnramEmbedding emb{src, dst, dst.teichmuller(dst.lift_prec(r, dst.prec()))};
      return emb;
    }
  }
  fail(Code::IntegrityFailure, "residue modulus has no root in the larger field");
}

UnramExt::Elem unram_frobenius(const UnramExt& R, const UnramExt::Elem& x) { return R.frobenius(x); }

}  // namespace ltp
