#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "ltp/ring.hpp"

namespace ltp {

constexpr int kWittMaxLen = 6;

// Exponent vector over X_0..X_5 (slots 0..5) and Y_0..Y_5 (slots 6..11).
using WittMono = std::array<uint16_t, 2 * kWittMaxLen>;
constexpr int witt_x(int i) { return i; }
constexpr int witt_y(int i) { return kWittMaxLen + i; }

struct WittTerm {
  WittMono m{};
  OLApprox c;
};

// Sparse polynomial, terms sorted by exponent vector, no zero coefficients.
struct WittPoly {
  std::vector<WittTerm> terms;
  size_t size() const { return terms.size(); }
};

enum class WittOp { Sum, Prod, Neg, Frob };
const char* witt_op_name(WittOp op);

// Universal arithmetic polynomials S_k, M_k, N_k, F_k over O_L, with
// coefficients correct modulo pi^prec(). Built lazily index by index.
class UniversalPolys {
 public:
  // A cache whose coefficients are valid at least to precision P.
  static std::shared_ptr<UniversalPolys> get(const OLField* F, int P);

  const OLField* field() const { return F_; }
  int prec() const { return P_; }
  // Working precision: P_k is stored modulo pi^(work_prec - k).
  int work_prec() const { return W_; }

  const WittPoly& poly(WittOp op, int k);
  // Number of indices currently built for op.
  int built(WittOp op);
  // Builds S, M, N up to index len-1 and F up to index len-1.
  void build_all(int len);

  void save(const std::string& path, int len);
  // Replaces the cache entries from a file. Throws INTEGRITY_FAILURE on a
  // checksum mismatch or when the loaded polynomials fail the ghost identities.
  static std::shared_ptr<UniversalPolys> load(const std::string& path, const OLField* F);

  // Randomized check of the defining ghost identities for indices < len.
  bool ghost_check(int len, uint64_t seed, int samples = 3);

  UniversalPolys(const OLField* F, int P);

 private:
  void build(WittOp op, int k);

  const OLField* F_;
  int P_, W_;
  std::mutex mu_;
  std::map<WittOp, std::vector<WittPoly>> polys_;
  std::map<WittOp, std::vector<WittPoly>> pow_cache_;
};

// build_universal_cache(q, len, prec) for the field F.
std::shared_ptr<UniversalPolys> build_universal_cache(const OLField* F, int len, int prec);

// Ghost polynomial w_k in the variables starting at slot base.
WittPoly ghost_poly(const OLField* F, int k, int base, int W);

template <class E>
struct WittVec {
  std::vector<E> x;
  size_t len() const { return x.size(); }
};

// Polynomial specialised to a coefficient ring: zero coefficients dropped,
// coefficients mapped into R, variables compacted.
template <CommRing R>
struct PreparedPoly {
  std::vector<int> vars;                   // slot of each compact variable
  std::vector<std::vector<int>> exps;      // distinct exponents per variable, ascending
  std::vector<std::vector<uint16_t>> idx;  // per term: exponent index per variable
  std::vector<typename R::Elem> coeffs;
};

template <CommRing R>
PreparedPoly<R> prepare_poly(const R& r, const WittPoly& p) {
  PreparedPoly<R> out;
  std::vector<const WittTerm*> live;
  for (const auto& t : p.terms) {
    auto c = r.from_ol(t.c);
    if (r.is_zero(c)) continue;
    live.push_back(&t);
    out.coeffs.push_back(c);
  }
  for (int s = 0; s < 2 * kWittMaxLen; ++s) {
    std::vector<int> es;
    for (auto* t : live) es.push_back(t->m[size_t(s)]);
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
    if (es.size() == 1 && es[0] == 0) continue;
    if (es.empty()) continue;
    out.vars.push_back(s);
    out.exps.push_back(es);
  }
  for (auto* t : live) {
    std::vector<uint16_t> ix;
    for (size_t v = 0; v < out.vars.size(); ++v) {
      const auto& es = out.exps[v];
      ix.push_back(uint16_t(std::lower_bound(es.begin(), es.end(), t->m[size_t(out.vars[v])]) - es.begin()));
    }
    out.idx.push_back(ix);
  }
  return out;
}

// Evaluates a prepared polynomial; slot s takes the value vals[s].
template <CommRing R>
typename R::Elem eval_prepared(const R& r, const PreparedPoly<R>& p,
                               const std::array<const typename R::Elem*, 2 * kWittMaxLen>& vals) {
  using E = typename R::Elem;
  size_t nv = p.vars.size();
  std::vector<std::vector<E>> pw(nv);
  for (size_t v = 0; v < nv; ++v) {
    const E* a = vals[size_t(p.vars[v])];
    require(a != nullptr, Code::InvalidArgument, "missing Witt coordinate");
    int prev = 0;
    E cur = r.one();
    for (int e : p.exps[v]) {
      if (e > prev) cur = r.mul(cur, ring_pow(r, *a, uint64_t(e - prev)));
      prev = e;
      pw[v].push_back(cur);
    }
  }
  E acc = r.zero();
  std::vector<E> partial(nv + 1, r.one());
  const std::vector<uint16_t>* prev = nullptr;
  for (size_t t = 0; t < p.idx.size(); ++t) {
    const auto& ix = p.idx[t];
    size_t d = 0;
    if (prev)
      while (d < nv && (*prev)[d] == ix[d]) ++d;
    for (size_t v = d; v < nv; ++v) {
      if (p.exps[v][ix[v]] == 0) partial[v + 1] = partial[v];
      else partial[v + 1] = r.mul(partial[v], pw[v][ix[v]]);
    }
    prev = &ix;
    acc = r.add(acc, r.mul(p.coeffs[t], partial[nv]));
  }
  return acc;
}

// W_{L,len}(R): Witt vectors of length len over R with operations from the
// universal polynomials.
template <CommRing R>
class WittRing {
 public:
  using Coeff = typename R::Elem;
  using Elem = WittVec<Coeff>;

  WittRing() = default;
  WittRing(R base, int len) : base_(std::move(base)), len_(len) {
    require(len >= 1 && len <= kWittMaxLen, Code::InvalidArgument, "Witt length must be in [1, 6]");
    cache_ = UniversalPolys::get(base_.ol(), std::max(1, ltp::coeff_precision(base_)));
    state_ = std::make_shared<State>();
  }

  const R& base() const { return base_; }
  int len() const { return len_; }
  const OLField* ol() const { return base_.ol(); }
  int coeff_precision() const { return ltp::coeff_precision(base_); }

  Elem zero() const { return Elem{std::vector<Coeff>(size_t(len_), base_.zero())}; }
  Elem one() const { return teichmuller(base_.one()); }
  Elem teichmuller(const Coeff& r) const {
    Elem v = zero();
    v.x[0] = r;
    return v;
  }
  Elem from_coords(std::vector<Coeff> xs) const {
    require(int(xs.size()) == len_, Code::InvalidArgument, "Witt vector length mismatch");
    return Elem{std::move(xs)};
  }
  // Image of alpha under O_L -> W_L(O_L) -> W_L(R); the representative of
  // alpha is treated as exact.
  Elem from_ol(const OLApprox& alpha) const {
    const OLField* F = ol();
    int P = std::min(F->max_prec(), std::max(1, coeff_precision()) + len_);
    OLRing O(F, P);
    OLApprox a = alpha.lift_prec(P);
    std::vector<OLApprox> xs;
    for (int k = 0; k < len_; ++k) {
      OLApprox num = a;
      for (int i = 0; i < k; ++i)
        num = num - OLApprox::pi_power(F, i, P) * xs[size_t(i)].pow(uint64_t(ipow(F->q(), k - i)));
      try {
        xs.push_back(num.div_pi(k));
      } catch (const Error&) {
        fail(Code::IntegrityFailure, "section of O_L is not integral");
      }
    }
    Elem v = zero();
    for (int k = 0; k < len_; ++k) v.x[size_t(k)] = base_.from_ol(xs[size_t(k)]);
    return v;
  }
  Elem from_int(int64_t n) const { return from_ol(OLApprox::from_int(ol(), n, ol()->max_prec())); }

  Elem add(const Elem& a, const Elem& b) const { return apply2(WittOp::Sum, a, b); }
  Elem mul(const Elem& a, const Elem& b) const { return apply2(WittOp::Prod, a, b); }
  Elem neg(const Elem& a) const {
    check(a);
    Elem r = zero();
    for (int k = 0; k < len_; ++k) r.x[size_t(k)] = eval(WittOp::Neg, k, a, nullptr);
    return r;
  }
  Elem sub(const Elem& a, const Elem& b) const { return add(a, neg(b)); }
  bool eq(const Elem& a, const Elem& b) const {
    for (int k = 0; k < len_; ++k)
      if (!base_.eq(a.x[size_t(k)], b.x[size_t(k)])) return false;
    return true;
  }
  bool is_zero(const Elem& a) const {
    for (const auto& c : a.x)
      if (!base_.is_zero(c)) return false;
    return true;
  }
  std::string str(const Elem& a) const {
    std::ostringstream os;
    os << "(";
    for (size_t k = 0; k < a.x.size(); ++k) os << (k ? ", " : "") << coeff_text(a.x[k]);
    os << ")";
    return os.str();
  }
  Elem random(Rng& g) const
    requires SampledRing<R>
  {
    Elem v = zero();
    for (auto& c : v.x) c = base_.random(g);
    return v;
  }

  // F: W_{len} -> W_{len-1}.
  Elem frobenius_truncating(const Elem& a) const {
    check(a);
    require(len_ >= 2, Code::InvalidArgument, "Frobenius needs length >= 2");
    Elem r{std::vector<Coeff>(size_t(len_ - 1), base_.zero())};
    for (int k = 0; k < len_ - 1; ++k) r.x[size_t(k)] = eval(WittOp::Frob, k, a, nullptr);
    return r;
  }
  // V: W_{len} -> W_{len+1}.
  Elem verschiebung(const Elem& a) const {
    check(a);
    Elem r{std::vector<Coeff>(size_t(len_ + 1), base_.zero())};
    for (int k = 0; k < len_; ++k) r.x[size_t(k + 1)] = a.x[size_t(k)];
    return r;
  }
  std::vector<Coeff> ghost(const Elem& a) const {
    check(a);
    std::vector<Coeff> w;
    const OLField* F = ol();
    int P = std::max(1, coeff_precision());
    for (int n = 0; n < len_; ++n) {
      Coeff s = base_.zero();
      for (int i = 0; i <= n; ++i) {
        Coeff t = ring_pow(base_, a.x[size_t(i)], uint64_t(ipow(F->q(), n - i)));
        s = base_.add(s, ring_scale(base_, OLApprox::pi_power(F, i, P), t));
      }
      w.push_back(s);
    }
    return w;
  }
  Elem truncate(const Elem& a, int n) const {
    Elem r = a;
    r.x.resize(size_t(n));
    return r;
  }

  const std::shared_ptr<UniversalPolys>& cache() const { return cache_; }

 private:
  struct State {
    std::mutex mu;
    std::map<std::pair<WittOp, int>, std::shared_ptr<const PreparedPoly<R>>> prepared;
  };

  std::string coeff_text(const Coeff& c) const {
    if constexpr (std::is_same_v<Coeff, OLApprox>) return c.repr();
    else return base_.str(c);
  }
  void check(const Elem& a) const {
    require(int(a.x.size()) == len_, Code::RingMismatch, "Witt vector length does not match the ring");
  }
  std::shared_ptr<const PreparedPoly<R>> prepared(WittOp op, int k) const {
    std::lock_guard<std::mutex> lk(state_->mu);
    auto& slot = state_->prepared[{op, k}];
    if (!slot) slot = std::make_shared<PreparedPoly<R>>(prepare_poly(base_, cache_->poly(op, k)));
    return slot;
  }
  Coeff eval(WittOp op, int k, const Elem& a, const Elem* b) const {
    auto p = prepared(op, k);
    std::array<const Coeff*, 2 * kWittMaxLen> vals{};
    for (size_t i = 0; i < a.x.size() && i < size_t(kWittMaxLen); ++i) vals[size_t(witt_x(int(i)))] = &a.x[i];
    if (b)
      for (size_t i = 0; i < b->x.size() && i < size_t(kWittMaxLen); ++i) vals[size_t(witt_y(int(i)))] = &b->x[i];
    return eval_prepared(base_, *p, vals);
  }
  Elem apply2(WittOp op, const Elem& a, const Elem& b) const {
    check(a);
    check(b);
    Elem r = zero();
    for (int k = 0; k < len_; ++k) r.x[size_t(k)] = eval(op, k, a, &b);
    return r;
  }

  R base_;
  int len_ = 1;
  std::shared_ptr<UniversalPolys> cache_;
  std::shared_ptr<State> state_;
};

// The delta_L-section s_R: ghost components (a, phi(a), phi^2(a), ...).
template <class R>
  requires FrobeniusRing<R> && PiDivisible<R>
WittVec<typename R::Elem> delta_section(const R& r, const typename R::Elem& a, int len) {
  using E = typename R::Elem;
  const OLField* F = r.ol();
  int P = std::max(1, coeff_precision(r));
  std::vector<E> xs;
  E phik = a;
  for (int k = 0; k < len; ++k) {
    if (k > 0) phik = r.frobenius(phik);
    E num = phik;
    for (int i = 0; i < k; ++i)
      num = r.sub(num, ring_scale(r, OLApprox::pi_power(F, i, P),
                                  ring_pow(r, xs[size_t(i)], uint64_t(ipow(F->q(), k - i)))));
    try {
      for (int i = 0; i < k; ++i) num = r.div_pi(num);
    } catch (const Error& e) {
      if (e.code() == Code::Indivisible)
        fail(Code::IntegrityFailure, "ghost equation not divisible; the Frobenius map does not lift x -> x^q");
      throw;
    }
    xs.push_back(num);
  }
  return WittVec<E>{xs};
}

// delta_L(a): second Witt coordinate of s_R(a).
template <class R>
  requires FrobeniusRing<R> && PiDivisible<R>
typename R::Elem delta_from_w2(const R& r, const typename R::Elem& a) {
  return delta_section(r, a, 2).x[1];
}

// Sum of teich(x_i) pi^i for coordinates in F_q; the isomorphism W_{L,n}(F_q) -> O_L/pi^n.
OLApprox witt_fq_to_ol(const OLField* F, const std::vector<FqField::E>& coords);

}  // namespace ltp
