#include "ltp/tower.hpp"

#include <sstream>

namespace ltp {

namespace {

using Poly = std::vector<OLApprox>;

Poly poly_mul(const Poly& a, const Poly& b, const OLField* F, int P) {
  Poly r(a.size() + b.size() - 1, OLApprox::zero(F, P));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  }
  return r;
}

Poly poly_compose(const Poly& f, const Poly& g, const OLField* F, int P) {
  Poly acc{f.back()};
  for (size_t i = f.size() - 1; i-- > 0;) {
    acc = poly_mul(acc, g, F, P);
    acc[0] = acc[0] + f[i];
  }
  return acc;
}

std::string o_term(const OLField* F, int P) {
  std::string s = OLApprox::zero(F, P).str();
  auto pos = s.find("O(");
  return pos == std::string::npos ? s : s.substr(pos);
}

}  // namespace

struct TowerLevel::Data {
  const OLField* F = nullptr;
  int n = 0, P = 0, D = 0;
  int64_t q = 0;
  Poly mod;   // monic, size D + 1
  Poly frob;  // f at precision P
};

TowerLevel TowerLevel::make(const LTGroup& G, int n, int P) {
  require(n >= 1, Code::InvalidArgument, "tower level needs n >= 1");
  require(P >= 1, Code::InvalidArgument, "tower precision must be positive");
  const OLField* F = G.field();
  const int64_t q = F->q();
  const auto& fp = G.frobenius_poly();
  require(int64_t(fp.size()) == q + 1 && fp.back().equals(OLApprox::from_int(F, 1, fp.back().prec())),
          Code::InvalidArgument, "tower levels need a monic Frobenius polynomial of degree q");
  auto d = std::make_shared<Data>();
  d->F = F;
  d->n = n;
  d->P = P;
  d->q = q;
  for (const auto& c : fp) d->frob.push_back(c.with_prec(P));
  Poly q1(d->frob.begin() + 1, d->frob.end());
  Poly g{OLApprox::zero(F, P), OLApprox::from_int(F, 1, P)};
  for (int i = 1; i < n; ++i) g = poly_compose(d->frob, g, F, P);
  d->mod = poly_compose(q1, g, F, P);
  d->D = int(d->mod.size()) - 1;
  require(d->D == int(ipow(uint64_t(q), unsigned(n - 1)) * uint64_t(q - 1)), Code::IntegrityFailure,
          "q_n has unexpected degree");
  TowerLevel t;
  t.d_ = d;
  return t;
}

int TowerLevel::n() const { return d_->n; }
int TowerLevel::P() const { return d_->P; }
int TowerLevel::rank() const { return d_->D; }
const OLField* TowerLevel::ol() const { return d_->F; }
const std::vector<OLApprox>& TowerLevel::modulus() const { return d_->mod; }

bool TowerLevel::modulus_is_eisenstein() const {
  const auto& m = d_->mod;
  if (m[0].valuation() != 1) return false;
  for (int i = 1; i < d_->D; ++i)
    if (m[size_t(i)].valuation() < 1) return false;
  return m.back().is_unit();
}

TowerLevel::Elem TowerLevel::zero() const { return Elem(size_t(d_->D), OLApprox::zero(d_->F, d_->P)); }
TowerLevel::Elem TowerLevel::one() const { return from_int(1); }
TowerLevel::Elem TowerLevel::from_int(int64_t v) const { return from_ol(OLApprox::from_int(d_->F, v, d_->P)); }
TowerLevel::Elem TowerLevel::from_ol(const OLApprox& a) const {
  Elem r = zero();
  r[0] = a.with_prec(std::min(a.prec(), d_->P));
  return r;
}
TowerLevel::Elem TowerLevel::add(const Elem& a, const Elem& b) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}
TowerLevel::Elem TowerLevel::sub(const Elem& a, const Elem& b) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}
TowerLevel::Elem TowerLevel::neg(const Elem& a) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

TowerLevel::Elem TowerLevel::mul(const Elem& a, const Elem& b) const {
  const int D = d_->D;
  int P = std::min(prec_of(a), prec_of(b));
  Poly r(size_t(2 * D - 1), OLApprox::zero(d_->F, P));
  for (int i = 0; i < D; ++i) {
    if (a[size_t(i)].is_zero()) continue;
    for (int j = 0; j < D; ++j) r[size_t(i + j)] = r[size_t(i + j)] + a[size_t(i)] * b[size_t(j)];
  }
  for (int i = 2 * D - 2; i >= D; --i) {
    OLApprox c = r[size_t(i)];
    if (c.is_zero()) continue;
    for (int j = 0; j < D; ++j) r[size_t(i - D + j)] = r[size_t(i - D + j)] - c * d_->mod[size_t(j)];
  }
  r.resize(size_t(D));
  return r;
}

bool TowerLevel::eq(const Elem& a, const Elem& b) const {
  for (size_t i = 0; i < a.size(); ++i)
    if (!a[i].equals(b[i])) return false;
  return true;
}
bool TowerLevel::is_zero(const Elem& a) const {
  for (const auto& c : a)
    if (!c.is_zero()) return false;
  return true;
}

std::string TowerLevel::str(const Elem& a) const {
  std::ostringstream os;
  bool first = true;
  std::string var = "e_" + std::to_string(d_->n);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    std::string c = a[i].repr();
    std::string mono = i == 0 ? "" : (i == 1 ? var : var + "^" + std::to_string(i));
    std::string term;
    if (i == 0) term = c;
    else if (c == "1") term = mono;
    else if (c == "-1") term = "-" + mono;
    else term = c + "*" + mono;
    if (first) os << term;
    else if (term[0] == '-') os << " - " << term.substr(1);
    else os << " + " << term;
    first = false;
  }
  if (first) os << "0";
  os << " + " << o_term(d_->F, prec_of(a));
  return os.str();
}

TowerLevel::Elem TowerLevel::random(Rng& g) const {
  OLRing O(d_->F, d_->P);
  Elem r(size_t(d_->D));
  for (auto& c : r) c = O.random(g);
  return r;
}

TowerLevel::Elem TowerLevel::with_prec(const Elem& a, int P) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i].with_prec(std::min(P, a[i].prec()));
  return r;
}

int TowerLevel::prec_of(const Elem& a) const {
  int P = d_->P;
  for (const auto& c : a) P = std::min(P, c.prec());
  return P;
}

TowerLevel::Elem TowerLevel::e() const {
  Elem r = zero();
  if (d_->D > 1) r[1] = OLApprox::from_int(d_->F, 1, d_->P);
  else r = from_ol(-d_->mod[0]);
  return r;
}

TowerLevel::Elem TowerLevel::eval_poly(const std::vector<OLApprox>& coeffs, const Elem& x) const {
  Elem acc = zero();
  for (size_t i = coeffs.size(); i-- > 0;) acc = add(mul(acc, x), from_ol(coeffs[i]));
  return acc;
}

TowerLevel::Elem TowerLevel::iota(const OLSeries& f) const {
  require(f.lowest >= 0, Code::InvalidArgument, "iota_n needs a power series");
  int P = std::min(d_->P, f.N / d_->D);
  require(P >= 1, Code::InsufficientPrecision, "series truncation too short for this tower level");
  return with_prec(eval_poly(f.c, e()), P);
}

TowerLevel::Elem TowerLevel::embed(const TowerLevel& lower, const Elem& x) const {
  require(lower.n() <= n(), Code::InvalidArgument, "can only embed lower levels");
  Elem em = e();
  for (int i = lower.n(); i < n(); ++i) em = eval_poly(d_->frob, em);
  return eval_poly(x, em);
}

struct TruncTilt::Data {
  const OLField* F = nullptr;
  int64_t q = 0;
  int N = 0, k = 0, D = 0;
  FqRing fq;
  SeriesRing<FqRing> C;
};

TruncTilt TruncTilt::make(const OLField* F, int q, int level, int depth) {
  require(level >= 1 && depth >= 1, Code::InvalidArgument, "tilt needs level, depth >= 1");
  require(depth <= level, Code::DepthExceedsTower,
          "tilt depth " + std::to_string(depth) + " exceeds tower level " + std::to_string(level));
  auto d = std::make_shared<Data>();
  d->F = F;
  d->q = q;
  d->N = level;
  d->k = depth;
  d->D = int(ipow(uint64_t(q), unsigned(level - 1)) * uint64_t(q - 1));
  d->fq = FqRing::make(F, 1);
  d->C = SeriesRing<FqRing>(d->fq, d->D);
  TruncTilt t;
  t.d_ = d;
  return t;
}

int TruncTilt::level() const { return d_->N; }
int TruncTilt::depth() const { return d_->k; }
int TruncTilt::comp_dim() const { return d_->D; }
const SeriesRing<FqRing>& TruncTilt::comp_ring() const { return d_->C; }
const OLField* TruncTilt::ol() const { return d_->F; }

TruncTilt::Elem TruncTilt::zero() const { return Elem(size_t(d_->k), d_->C.zero()); }
TruncTilt::Elem TruncTilt::one() const { return Elem(size_t(d_->k), d_->C.one()); }
TruncTilt::Elem TruncTilt::from_int(int64_t v) const { return Elem(size_t(d_->k), d_->C.from_int(v)); }
TruncTilt::Elem TruncTilt::from_ol(const OLApprox& a) const {
  // elements of F_q are their own q-th roots
  return Elem(size_t(d_->k), d_->C.from_coeff(d_->fq.from_ol(a)));
}

TruncTilt::Elem TruncTilt::add(const Elem& a, const Elem& b) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = d_->C.add(a[i], b[i]);
  return r;
}
TruncTilt::Elem TruncTilt::sub(const Elem& a, const Elem& b) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = d_->C.sub(a[i], b[i]);
  return r;
}
TruncTilt::Elem TruncTilt::neg(const Elem& a) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = d_->C.neg(a[i]);
  return r;
}
TruncTilt::Elem TruncTilt::mul(const Elem& a, const Elem& b) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = d_->C.mul(a[i], b[i]);
  return r;
}
bool TruncTilt::eq(const Elem& a, const Elem& b) const {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!d_->C.eq(a[i], b[i])) return false;
  return true;
}
bool TruncTilt::is_zero(const Elem& a) const {
  for (const auto& c : a)
    if (!d_->C.is_zero(c)) return false;
  return true;
}
std::string TruncTilt::str(const Elem& a) const {
  std::string s = "(";
  for (size_t i = 0; i < a.size(); ++i) s += (i ? ", " : "") + d_->C.repr(a[i]);
  return s + ")";
}

namespace {

// q-power in F_q[T]/T^D: coefficients are fixed, exponents scale by q.
TruncTilt::Comp comp_qpow(const SeriesRing<FqRing>& C, const TruncTilt::Comp& a, int64_t q) {
  TruncTilt::Comp r = C.zero();
  for (int d = 0; d < a.N; ++d) {
    int64_t e = int64_t(d) * q;
    if (e >= C.N) break;
    r.c[size_t(e)] = a.c[size_t(d)];
  }
  return r;
}

}  // namespace

TruncTilt::Elem TruncTilt::random(Rng& g) const {
  Elem r(size_t(d_->k));
  r.back() = d_->C.random(g);
  for (int i = d_->k - 2; i >= 0; --i) r[size_t(i)] = comp_qpow(d_->C, r[size_t(i + 1)], d_->q);
  return r;
}

bool TruncTilt::is_compatible(const Elem& a) const {
  for (size_t i = 0; i + 1 < a.size(); ++i)
    if (!d_->C.eq(comp_qpow(d_->C, a[i + 1], d_->q), a[i])) return false;
  return true;
}

TruncTilt::Elem TruncTilt::frobenius(const Elem& a) const {
  Elem r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = comp_qpow(d_->C, a[i], d_->q);
  return r;
}

TruncTilt TruncTilt::shallower(int s) const {
  require(s >= 0 && s < d_->k, Code::InsufficientDepth, "cannot drop that many tilt components");
  return make(d_->F, int(d_->q), d_->N, d_->k - s);
}

TruncTilt::Elem TruncTilt::phi_inverse(const Elem& a, int s) const {
  require(s >= 0 && s < int(a.size()), Code::InsufficientDepth, "cannot drop that many tilt components");
  return Elem(a.begin() + s, a.end());
}

TruncTilt::Elem TruncTilt::omega_bar() const { return iota_bar(d_->C.T(), 0); }

TruncTilt::Elem TruncTilt::iota_bar(const Comp& a, int shift) const {
  require(a.lowest >= 0, Code::InvalidArgument, "iota needs a power series");
  require(shift >= 0 && d_->k - 1 + shift <= d_->N, Code::DepthExceedsTower,
          "component e_" + std::to_string(d_->k - 1 + shift) + " is beyond tower level " + std::to_string(d_->N));
  Elem r(size_t(d_->k), d_->C.zero());
  for (int j = 0; j < d_->k; ++j) {
    int idx = j + shift;
    Comp& out = r[size_t(j)];
    if (idx == 0) {
      out = d_->C.from_coeff(a.c.empty() ? 0 : a.c[0]);
      continue;
    }
    // e_idx = e_N^(q^(N - idx)) modulo pi
    int64_t step = int64_t(ipow(uint64_t(d_->q), unsigned(d_->N - idx)));
    require(int64_t(a.N) * step >= d_->D, Code::InsufficientPrecision, "series truncation too short for the tilt");
    for (int d = 0; d < a.N; ++d) {
      int64_t e = int64_t(d) * step;
      if (e >= d_->D) break;
      out.c[size_t(e)] = a.c[size_t(d)];
    }
  }
  return r;
}

WittVec<TruncTilt::Elem> iota_witt(const OLSeriesRing& S, const OLSeries& f, const TruncTilt& tilt, int len,
                                   int shift) {
  require(len >= 1, Code::InvalidArgument, "Witt length must be positive");
  require(S.coeff_precision() >= len, Code::InsufficientPrecision, "series precision must cover the Witt length");
  auto s = delta_section(S, f, len);
  const auto& C = tilt.comp_ring();
  WittVec<TruncTilt::Elem> out;
  for (const auto& si : s.x) {
    TruncTilt::Comp red = C.make(0, si.N);
    for (int d = 0; d < si.N; ++d) red.c[size_t(d)] = C.base.from_ol(si.c[size_t(d)]);
    out.x.push_back(tilt.iota_bar(red, shift));
  }
  return out;
}

int theta_precision(int len, int depth, int P) { return std::min({len, depth, P}); }

TowerLevel::Elem theta(const WittVec<TruncTilt::Elem>& x, const TruncTilt& tilt, const TowerLevel& target) {
  const int len = int(x.x.size());
  const int k = tilt.depth();
  require(len <= k, Code::InsufficientDepth,
          "Witt length " + std::to_string(len) + " exceeds tilt depth " + std::to_string(k));
  require(target.n() == tilt.level() && target.rank() == tilt.comp_dim(), Code::RingMismatch,
          "theta target must be the tilt's tower level");
  const OLField* F = target.ol();
  const int P = theta_precision(len, k, target.P());
  const auto& fq = *tilt.comp_ring().base.k;
  const int64_t q = F->q();
  TowerLevel::Elem acc = target.with_prec(target.zero(), P);
  for (int i = 0; i < len; ++i) {
    const auto& comp = x.x[size_t(i)][size_t(k - 1)];
    TowerLevel::Elem lift = target.with_prec(target.zero(), P);
    for (int d = 0; d < comp.N && d < target.rank(); ++d)
      lift[size_t(d)] = OLApprox::from_residue(F, fq.coeffs(comp.c[size_t(d)]), P);
    auto sharp = ring_pow(target, lift, ipow(uint64_t(q), unsigned(k - 1 - i)));
    acc = target.add(acc, target.mul(target.from_ol(OLApprox::pi_power(F, i, P)), sharp));
  }
  return target.with_prec(acc, P);
}

ThetaReport verify_theta_phi_iota(const LTGroup& G, int n, int depth, int len, int samples, uint64_t seed) {
  require(n >= 0 && depth >= 1 && len >= 1, Code::InvalidArgument, "bad theta parameters");
  require(len <= depth, Code::InsufficientDepth,
          "Witt length " + std::to_string(len) + " exceeds tilt depth " + std::to_string(depth));
  const OLField* F = G.field();
  const int64_t q = F->q();
  const int N = std::max(depth, n + depth - 1);
  const int P = theta_precision(len, depth, len);
  TowerLevel RN = TowerLevel::make(G, N, P);
  TruncTilt tilt = TruncTilt::make(F, int(q), N, depth);
  const int M = RN.rank();
  OLSeriesRing S(OLRing(F, len), M);
  {
    std::vector<OLApprox> fc;
    for (const auto& c : G.frobenius_poly()) fc.push_back(c.with_prec(len));
    S.frob_T = std::make_shared<OLSeries>(S.from_coeffs(fc));
  }
  TowerLevel Ln = n >= 1 ? TowerLevel::make(G, n, P) : TowerLevel();

  std::vector<std::pair<std::string, OLSeries>> fs;
  fs.emplace_back("T", S.T());
  Rng g(seed);
  OLRing O(F, len);
  if (n >= 1) {
    OLSeries qn = S.zero();
    for (int d = 0; d <= Ln.rank() && d < M; ++d) qn.c[size_t(d)] = Ln.modulus()[size_t(d)].with_prec(len);
    fs.emplace_back("q_n", qn);
  }
  fs.emplace_back("const", S.from_ol(O.random(g)));
  for (int i = int(fs.size()); i < samples; ++i) fs.emplace_back("random#" + std::to_string(i), S.random(g));

  ThetaReport rep;
  rep.check = CheckResult{"tower.theta.n" + std::to_string(n), "theta-phi-iota", true, "", ""};
  int bad = 0;
  for (auto& [name, f] : fs) {
    ThetaSample smp;
    smp.f = name;
    smp.prec = P;
    auto x = iota_witt(S, f, tilt, len, n);
    smp.lhs = theta(x, tilt, RN);
    smp.rhs = n >= 1 ? RN.embed(Ln, Ln.iota(f)) : RN.from_ol(S.coeff(f, 0));
    smp.rhs = RN.with_prec(smp.rhs, P);
    smp.ok = RN.eq(smp.lhs, smp.rhs);
    if (!smp.ok) ++bad;
    rep.check.certificate += name + ":" + RN.str(smp.lhs) + ";";
    rep.samples.push_back(std::move(smp));
  }
  rep.check.pass = bad == 0;
  std::ostringstream os;
  os << (int(fs.size()) - bad) << "/" << fs.size() << " samples agree mod pi^" << P << " (N=" << N << ", depth=" << depth
     << ", len=" << len << ")";
  rep.check.detail = os.str();
  return rep;
}

}  // namespace ltp
