#include "ltp/lubintate.hpp"

#include <sstream>

namespace ltp {

namespace {

using Homog = std::vector<OLApprox>;

Homog homog_zero(const OLField* F, int d, int W) { return Homog(size_t(d + 1), OLApprox::zero(F, W)); }

void homog_mul_acc(Homog& out, const Homog& u, const Homog& v) {
  for (size_t a = 0; a < u.size(); ++a) {
    if (u[a].is_zero()) continue;
    for (size_t b = 0; b < v.size(); ++b) out[a + b] = out[a + b] + u[a] * v[b];
  }
}

// x / (pi - pi^d) for an element known to be divisible by pi.
OLApprox solve_step(const OLApprox& x, const OLApprox& unit_inv, int W, int d) {
  OLApprox y;
  try {
    y = x.div_pi(1).lift_prec(W);
  } catch (const Error& e) {
    fail(Code::Nonconvergence, "degree " + std::to_string(d) + " correction is not integral: " + e.what());
  }
  return y * unit_inv;
}

}  // namespace

int lt_precision_loss(int64_t q, int N) {
  int k = 1;
  for (int64_t t = q; t <= N - 1; t *= q) ++k;
  return k;
}

LTGroup::LTGroup(const OLField* F, std::vector<OLApprox> f, int N, int P) : F_(F), N_(N), P_(P) {
  require(N >= 2, Code::InvalidArgument, "truncation must be at least 2");
  require(P >= 1, Code::InvalidArgument, "precision must be positive");
  const int64_t q = F->q();
  W_ = P + lt_precision_loss(q, N);
  require(W_ <= F->max_prec(), Code::InsufficientPrecision,
          "Lubin-Tate precision " + std::to_string(P) + " at truncation " + std::to_string(N) +
              " exceeds the supported range for " + F->describe());
  require(int64_t(f.size()) > q, Code::BadFrobeniusSeries, "Frobenius polynomial has degree below q");
  require(f[0].is_zero(), Code::BadFrobeniusSeries, "Frobenius polynomial has a constant term");
  require(f[1].equals(OLApprox::pi_power(F, 1, f[1].prec())), Code::BadFrobeniusSeries,
          "linear coefficient of the Frobenius polynomial must be pi");
  for (size_t i = 2; i < f.size(); ++i) {
    OLApprox r = int64_t(i) == q ? f[i] - OLApprox::from_int(F, 1, f[i].prec()) : f[i];
    require(r.prec() >= 1 && r.valuation() >= 1, Code::BadFrobeniusSeries,
            "Frobenius polynomial is not T^q mod pi at degree " + std::to_string(i));
  }
  while (f.size() > 2 && f.back().is_zero() && int64_t(f.size()) > q + 1) f.pop_back();
  for (auto& c : f) fpoly_.push_back(c.lift_prec(W_));

  S_ = OLSeriesRing(OLRing(F, P), N);
  fs_ = S_.zero();
  for (size_t i = 0; i < fpoly_.size() && int(i) < N; ++i) fs_.c[i] = fpoly_[i].with_prec(P);
  S_.frob_T = std::make_shared<OLSeries>(fs_);

  OLSeriesRing SW(OLRing(F, W_), N);
  OLSeries fw = SW.zero();
  for (size_t i = 0; i < fpoly_.size() && int(i) < N; ++i) fw.c[i] = fpoly_[i];
  OLSeries acc = SW.one();
  for (int i = 0; i < N; ++i) {
    fpow_.push_back(acc.c);
    acc = SW.mul(acc, fw);
  }
}

std::shared_ptr<const LTGroup> LTGroup::make(const OLField* F, const std::vector<OLApprox>& f, int N, int P) {
  return std::make_shared<const LTGroup>(F, f, N, P);
}

std::shared_ptr<const LTGroup> LTGroup::standard(const OLField* F, int N, int P) {
  int W = F->max_prec();
  std::vector<OLApprox> f(size_t(F->q() + 1), OLApprox::zero(F, W));
  f[1] = OLApprox::pi_power(F, 1, W);
  f.back() = OLApprox::from_int(F, 1, W);
  return make(F, f, N, P);
}

std::shared_ptr<const LTGroup> LTGroup::cyclotomic(const OLField* F, int N, int P) {
  require(F->f() == 1 && F->e() == 1 && F->config().eisenstein.empty(), Code::BadConfig,
          "the cyclotomic preset needs O_L = Z_p with pi = p");
  int W = F->max_prec();
  int p = F->p();
  std::vector<OLApprox> f;
  int64_t b = 1;
  for (int i = 0; i <= p; ++i) {
    f.push_back(OLApprox::from_int(F, i == 0 ? 0 : b, W));
    b = b * (p - i) / (i + 1);
  }
  return make(F, f, N, P);
}

std::string LTGroup::describe() const {
  std::ostringstream os;
  OLSeriesRing S(OLRing(F_, P_), int(fpoly_.size()));
  OLSeries f = S.zero();
  for (size_t i = 0; i < fpoly_.size(); ++i) f.c[i] = fpoly_[i].with_prec(P_);
  os << "f = " << S.repr(f) << " over " << F_->describe();
  return os.str();
}

const std::vector<std::vector<OLApprox>>& LTGroup::law() const {
  std::lock_guard<std::mutex> lk(mu_);
  if (!law_.empty()) return law_;
  const int W = W_;
  std::vector<Homog> H(size_t(N_), Homog{});
  H[0] = homog_zero(F_, 0, W);
  // pw[k][d]: degree-d part of F^k.
  std::vector<std::vector<Homog>> pw(static_cast<size_t>(N_));
  if (N_ > 1) {
    H[1] = {OLApprox::from_int(F_, 1, W), OLApprox::from_int(F_, 1, W)};
    pw[1].assign(size_t(N_), Homog{});
    pw[1][1] = H[1];
  }
  for (int d = 2; d < N_; ++d) {
    for (int k = 2; k <= d; ++k) {
      if (pw[size_t(k)].empty()) pw[size_t(k)].assign(size_t(N_), Homog{});
      Homog h = homog_zero(F_, d, W);
      for (int j = 1; j <= d - k + 1; ++j) {
        const Homog& lower = pw[size_t(k - 1)][size_t(d - j)];
        if (!lower.empty()) homog_mul_acc(h, H[size_t(j)], lower);
      }
      pw[size_t(k)][size_t(d)] = h;
    }
    Homog num = homog_zero(F_, d, W);
    for (int s = 1; s < d; ++s)
      for (int i = 0; i <= s; ++i) {
        const OLApprox& c = H[size_t(s)][size_t(i)];
        if (c.is_zero()) continue;
        int j = s - i;
        for (int a = i; a <= d - j; ++a) {
          const OLApprox& u = fpow_[size_t(i)][size_t(a)];
          const OLApprox& v = fpow_[size_t(j)][size_t(d - a)];
          if (u.is_zero() || v.is_zero()) continue;
          num[size_t(a)] = num[size_t(a)] + c * u * v;
        }
      }
    for (int k = 2; k <= d && k < int(fpoly_.size()); ++k) {
      if (fpoly_[size_t(k)].is_zero()) continue;
      const Homog& h = pw[size_t(k)][size_t(d)];
      for (int a = 0; a <= d; ++a) num[size_t(a)] = num[size_t(a)] - fpoly_[size_t(k)] * h[size_t(a)];
    }
    OLApprox uinv = (OLApprox::from_int(F_, 1, W) - OLApprox::pi_power(F_, d - 1, W)).inverse();
    Homog hd = homog_zero(F_, d, W);
    for (int a = 0; a <= d; ++a) hd[size_t(a)] = solve_step(num[size_t(a)], uinv, W, d);
    H[size_t(d)] = hd;
    pw[1][size_t(d)] = hd;
  }
  for (auto& h : H)
    for (auto& c : h) c = c.with_prec(P_);
  law_ = H;
  return law_;
}

MSeriesRing<OLRing>::Elem LTGroup::law_series(const MSeriesRing<OLRing>& M2) const {
  const auto& H = law();
  auto r = M2.zero();
  for (int d = 0; d < std::min(N_, M2.N); ++d)
    for (int a = 0; a <= d && a < int(H[size_t(d)].size()); ++a)
      r.c[size_t(M2.index({a, d - a, 0}))] = H[size_t(d)][size_t(a)];
  return r;
}

OLSeries LTGroup::law_apply(const OLSeries& A, const OLSeries& B) const {
  const auto& H = law();
  int n = std::min({N_, A.N, B.N});
  OLSeriesRing S(OLRing(F_, P_), n);
  std::vector<OLSeries> pa{S.one()}, pb{S.one()};
  for (int i = 1; i < n; ++i) {
    pa.push_back(S.mul(pa.back(), A));
    pb.push_back(S.mul(pb.back(), B));
  }
  OLSeries r = S.zero();
  for (int d = 1; d < n; ++d)
    for (int a = 0; a <= d; ++a) {
      const OLApprox& c = H[size_t(d)][size_t(a)];
      if (c.is_zero()) continue;
      r = S.add(r, S.scale(c, S.mul(pa[size_t(a)], pb[size_t(d - a)])));
    }
  return r;
}

std::vector<OLApprox> LTGroup::solve_endo(const OLApprox& a) const {
  const int W = W_;
  std::vector<OLApprox> A(size_t(N_), OLApprox::zero(F_, W));
  std::vector<std::vector<OLApprox>> pw(size_t(N_), std::vector<OLApprox>(size_t(N_), OLApprox::zero(F_, W)));
  if (N_ > 1) {
    A[1] = a.lift_prec(W);
    pw[1][1] = A[1];
  }
  for (int d = 2; d < N_; ++d) {
    for (int k = 2; k <= d; ++k) {
      OLApprox s = OLApprox::zero(F_, W);
      for (int j = 1; j <= d - k + 1; ++j) s = s + A[size_t(j)] * pw[size_t(k - 1)][size_t(d - j)];
      pw[size_t(k)][size_t(d)] = s;
    }
    OLApprox num = OLApprox::zero(F_, W);
    for (int j = 1; j < d; ++j) num = num + A[size_t(j)] * fpow_[size_t(j)][size_t(d)];
    for (int k = 2; k <= d && k < int(fpoly_.size()); ++k)
      num = num - fpoly_[size_t(k)] * pw[size_t(k)][size_t(d)];
    OLApprox uinv = (OLApprox::from_int(F_, 1, W) - OLApprox::pi_power(F_, d - 1, W)).inverse();
    A[size_t(d)] = solve_step(num, uinv, W, d);
    pw[1][size_t(d)] = A[size_t(d)];
  }
  return A;
}

OLSeries LTGroup::endo(const OLApprox& a) const {
  OLApprox key_elt = a.with_prec(std::min(a.prec(), W_));
  std::vector<int64_t> key = key_elt.digits();
  key.push_back(key_elt.prec());
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = endo_cache_.find(key);
    if (it != endo_cache_.end()) return it->second;
  }
  auto A = solve_endo(a);
  OLSeries s = S_.zero();
  for (int d = 0; d < N_; ++d) s.c[size_t(d)] = A[size_t(d)].with_prec(P_);
  std::lock_guard<std::mutex> lk(mu_);
  endo_cache_.emplace(key, s);
  return s;
}

OLSeries LTGroup::pi_power_endo(int k) const {
  require(k >= 0, Code::InvalidArgument, "negative power");
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = pi_cache_.find(k);
    if (it != pi_cache_.end()) return it->second;
  }
  OLSeries r = k == 0 ? S_.T() : S_.compose(fs_, pi_power_endo(k - 1));
  std::lock_guard<std::mutex> lk(mu_);
  pi_cache_.emplace(k, r);
  return r;
}

OLSeries LTGroup::qn(int n) const {
  require(n >= 1, Code::InvalidArgument, "q_n needs n >= 1");
  OLSeries q1 = S_.zero();
  for (int i = 0; i < N_ && i + 1 < int(fpoly_.size()); ++i) q1.c[size_t(i)] = fpoly_[size_t(i + 1)].with_prec(P_);
  if (n == 1) return q1;
  return S_.compose(q1, pi_power_endo(n - 1));
}

OLSeries LTGroup::gamma(const OLSeries& g, const OLApprox& u) const {
  require(u.is_unit(), Code::NotUnit, "Gamma operator needs a unit of O_L");
  return S_.compose(g, endo(u));
}

OLSeries LTGroup::gamma_qn_quotient(int n, const OLApprox& u) const {
  require(n >= 1, Code::InvalidArgument, "q_n needs n >= 1");
  OLSeries hu = S_.divide_exact(endo(u), S_.T());
  OLSeries top = S_.compose(hu, pi_power_endo(n));
  OLSeries bot = S_.compose(hu, pi_power_endo(n - 1));
  OLSeries Q = S_.mul(top, S_.invert_unit(bot));
  Q = S_.truncate(Q, std::min(Q.N, N_ - 1));
  require(S_.eq(S_.mul(qn(n), Q), gamma(qn(n), u)), Code::WitnessFailure,
          "q_n(T) does not divide q_n([u](T))");
  return Q;
}

OLSeries LTGroup::q1_witness() const {
  OLSeries w = S_.zero();
  for (int i = 0; i < N_ && i + 2 < int(fpoly_.size()); ++i) w.c[size_t(i)] = -fpoly_[size_t(i + 2)].with_prec(P_);
  return w;
}

std::pair<OLSeries, OLSeries> LTGroup::prism_witness(int n) const {
  require(n >= 1, Code::InvalidArgument, "prism witness needs n >= 1");
  OLSeries A = S_.mul(pi_power_endo(n - 1), S_.compose(q1_witness(), pi_power_endo(n)));
  OLSeries B = S_.one();
  OLSeries lhs = S_.add(S_.mul(A, qn(n)), S_.mul(B, qn(n + 1)));
  require(S_.eq(lhs, S_.from_ol(OLApprox::pi_power(F_, 1, P_))), Code::WitnessFailure,
          "pi = A*q_n + B*q_{n+1} fails at n = " + std::to_string(n));
  return {A, B};
}

}  // namespace ltp
