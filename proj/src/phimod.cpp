#include "ltp/phimod.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace ltp {

namespace {

constexpr int kMaxEnumLength = 20;

OLMatrix identity_matrix(const OLField* F, int N, int n) {
  OLMatrix Q(size_t(N), std::vector<OLApprox>(size_t(N), OLApprox::zero(F, n)));
  for (int i = 0; i < N; ++i) Q[size_t(i)][size_t(i)] = OLApprox::from_int(F, 1, n);
  return Q;
}

PhiVec from_flat(const PhiModule& M, const std::vector<OLApprox>& x) {
  PhiVec v = M.zero();
  int m = M.m();
  for (int i = 0; i < M.r; ++i)
    for (int j = 0; j < m; ++j) v[size_t(i)][size_t(j)] = x[size_t(i * m + j)];
  return v;
}

FiniteModule module_of(const OLField* F, const std::vector<int>& vals) {
  FiniteModule fm;
  fm.q = F->q();
  for (int v : vals)
    if (v > 0) fm.exps.push_back(v);
  std::sort(fm.exps.begin(), fm.exps.end());
  return fm;
}

}  // namespace

PhiModule PhiModule::make(const UnramExt& base, std::vector<std::vector<UnramExt::Elem>> A) {
  PhiModule M;
  M.base = base;
  M.r = int(A.size());
  require(M.r >= 1, Code::InvalidArgument, "phi-module needs rank >= 1");
  for (auto& row : A) {
    require(int(row.size()) == M.r, Code::InvalidArgument, "structure matrix must be square");
    for (auto& a : row) {
      require(int(a.size()) == base.m(), Code::InvalidArgument, "matrix entry has wrong length");
      a = base.with_prec(a, base.prec());
    }
  }
  M.A = std::move(A);
  return M;
}

PhiModule PhiModule::identity(const UnramExt& base, int r) {
  std::vector<std::vector<UnramExt::Elem>> A(size_t(r), std::vector<UnramExt::Elem>(size_t(r), base.zero()));
  for (int i = 0; i < r; ++i) A[size_t(i)][size_t(i)] = base.one();
  return make(base, A);
}

PhiModule PhiModule::random_etale(const UnramExt& base, int r, Rng& g) {
  for (;;) {
    std::vector<std::vector<UnramExt::Elem>> A(static_cast<size_t>(r));
    for (auto& row : A)
      for (int j = 0; j < r; ++j) row.push_back(base.random(g));
    PhiModule M = make(base, A);
    if (is_etale(M)) return M;
  }
}

PhiVec PhiModule::zero() const { return PhiVec(size_t(r), base.zero()); }

PhiVec PhiModule::apply(const PhiVec& v) const {
  PhiVec fv(v.size());
  for (size_t i = 0; i < v.size(); ++i) fv[i] = base.frobenius(v[i]);
  PhiVec w = zero();
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i) w[size_t(k)] = base.add(w[size_t(k)], base.mul(A[size_t(k)][size_t(i)], fv[size_t(i)]));
  return w;
}

bool PhiModule::is_fixed(const PhiVec& v) const {
  PhiVec w = apply(v);
  for (int i = 0; i < r; ++i)
    if (!base.eq(w[size_t(i)], v[size_t(i)])) return false;
  return true;
}

std::string PhiModule::str() const {
  std::ostringstream os;
  os << "rank " << r << " over W_" << n() << "(F_" << base.ol()->q() << "^" << m() << "), A = [";
  for (int i = 0; i < r; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < r; ++j) os << (j ? ", " : "") << base.str(A[size_t(i)][size_t(j)]);
  }
  os << "]";
  return os.str();
}

UnramExt::Elem phi_det(const PhiModule& M) {
  auto cp = charpoly(M.base, M.A);
  UnramExt::Elem d = cp.back();
  return M.r % 2 ? M.base.neg(d) : d;
}

bool is_etale(const PhiModule& M) { return M.base.is_unit(phi_det(M)); }

int FiniteModule::length() const {
  int s = 0;
  for (int v : exps) s += v;
  return s;
}

uint64_t FiniteModule::size() const { return ipow(uint64_t(q), unsigned(length())); }

std::string FiniteModule::str() const {
  if (exps.empty()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < exps.size(); ++i) os << (i ? " + " : "") << "O/pi^" << exps[i];
  return os.str();
}

OLMatrix phi_minus_one_matrix(const PhiModule& M) {
  const UnramExt& B = M.base;
  const OLField* F = B.ol();
  int m = M.m(), n = M.n(), N = m * M.r;
  OLMatrix X(size_t(N), std::vector<OLApprox>(size_t(N), OLApprox::zero(F, n)));
  for (int i = 0; i < M.r; ++i)
    for (int j = 0; j < m; ++j) {
      PhiVec v = M.zero();
      v[size_t(i)][size_t(j)] = OLApprox::from_int(F, 1, n);
      PhiVec w = M.apply(v);
      w[size_t(i)] = B.sub(w[size_t(i)], v[size_t(i)]);
      for (int k = 0; k < M.r; ++k)
        for (int l = 0; l < m; ++l) X[size_t(k * m + l)][size_t(i * m + j)] = w[size_t(k)][size_t(l)].lift_prec(n);
    }
  return X;
}

SmithForm smith_form(OLMatrix X, int n) {
  int N = int(X.size());
  SmithForm sf;
  if (N == 0) return sf;
  const OLField* F = X[0][0].field();
  sf.Q = identity_matrix(F, N, n);
  sf.vals.assign(size_t(N), n);
  for (int t = 0; t < N; ++t) {
    int bi = -1, bj = -1, bv = n;
    for (int i = t; i < N; ++i)
      for (int j = t; j < N; ++j) {
        const OLApprox& x = X[size_t(i)][size_t(j)];
        if (x.is_zero()) continue;
        int v = x.valuation();
        if (v < bv) bv = v, bi = i, bj = j;
      }
    if (bi < 0) break;
    std::swap(X[size_t(t)], X[size_t(bi)]);
    for (int l = 0; l < N; ++l) {
      std::swap(X[size_t(l)][size_t(t)], X[size_t(l)][size_t(bj)]);
      std::swap(sf.Q[size_t(l)][size_t(t)], sf.Q[size_t(l)][size_t(bj)]);
    }
    OLApprox uinv = X[size_t(t)][size_t(t)].div_pi(bv).inverse().lift_prec(n);
    auto factor = [&](const OLApprox& x) { return (x.div_pi(bv) * uinv).lift_prec(n); };
    for (int i = t + 1; i < N; ++i) {
      if (X[size_t(i)][size_t(t)].is_zero()) continue;
      OLApprox c = factor(X[size_t(i)][size_t(t)]);
      for (int k = t; k < N; ++k) X[size_t(i)][size_t(k)] = (X[size_t(i)][size_t(k)] - c * X[size_t(t)][size_t(k)]).lift_prec(n);
    }
    for (int k = t + 1; k < N; ++k) {
      if (X[size_t(t)][size_t(k)].is_zero()) continue;
      OLApprox c = factor(X[size_t(t)][size_t(k)]);
      for (int l = 0; l < N; ++l) {
        X[size_t(l)][size_t(k)] = (X[size_t(l)][size_t(k)] - c * X[size_t(l)][size_t(t)]).lift_prec(n);
        sf.Q[size_t(l)][size_t(k)] = (sf.Q[size_t(l)][size_t(k)] - c * sf.Q[size_t(l)][size_t(t)]).lift_prec(n);
      }
    }
    sf.vals[size_t(t)] = bv;
  }
  return sf;
}

FixedPoints fixed_points(const PhiModule& M) {
  require(is_etale(M), Code::NotEtale, "fixed points need an etale phi-module");
  const OLField* F = M.base.ol();
  int n = M.n(), N = M.m() * M.r;
  SmithForm sf = smith_form(phi_minus_one_matrix(M), n);
  std::vector<std::pair<int, int>> order;
  for (int t = 0; t < N; ++t)
    if (sf.vals[size_t(t)] > 0) order.push_back({sf.vals[size_t(t)], t});
  std::stable_sort(order.begin(), order.end());
  FixedPoints fp;
  fp.module.q = F->q();
  for (auto [v, t] : order) {
    OLApprox s = OLApprox::pi_power(F, n - v, n);
    std::vector<OLApprox> x(static_cast<size_t>(N));
    for (int l = 0; l < N; ++l) x[size_t(l)] = s * sf.Q[size_t(l)][size_t(t)];
    fp.module.exps.push_back(v);
    fp.gens.push_back(from_flat(M, x));
  }
  return fp;
}

HerrCohomology herr_h0_h1(const PhiModule& M) {
  SmithForm sf = smith_form(phi_minus_one_matrix(M), M.n());
  FiniteModule k = module_of(M.base.ol(), sf.vals);
  return HerrCohomology{k, k};
}

PhiModule base_change(const PhiModule& M, int m2) {
  require(m2 >= 1 && m2 % M.m() == 0, Code::NonMultiple,
          "base change degree " + std::to_string(m2) + " is not a multiple of " + std::to_string(M.m()));
  if (m2 == M.m()) return M;
  UnramExt dst = UnramExt::get(M.base.ol(), m2, M.n());
  UnramEmbedding emb = unram_embedding(M.base, dst);
  auto A = M.A;
  for (auto& row : A)
    for (auto& a : row) a = emb(a);
  return PhiModule::make(dst, A);
}

Stabilization stabilization_check(const PhiModule& M, int max_steps) {
  require(is_etale(M), Code::NotEtale, "stabilization needs an etale phi-module");
  Stabilization st;
  int full = M.n() * M.r;
  for (int s = 1; s <= max_steps; ++s) {
    PhiModule Ms;
    try {
      Ms = base_change(M, M.m() * s);
    } catch (const Error& e) {
      if (e.code() != Code::InvalidArgument) throw;
      break;
    }
    int len = fixed_points(Ms).module.length();
    st.length_trace.push_back(len);
    if (len == full) {
      st.reached = true;
      st.m_star = s;
      break;
    }
  }
  return st;
}

std::vector<OLApprox> enumerate_ol(const OLField* F, int v, int n) {
  const FqField* k = F->residue_field();
  require(k != nullptr, Code::InvalidArgument, "enumeration needs q <= 256");
  std::vector<OLApprox> out{OLApprox::zero(F, n)};
  for (int i = 0; i < v; ++i) {
    OLApprox pi = OLApprox::pi_power(F, i, n);
    std::vector<OLApprox> next;
    for (const auto& x : out)
      for (int d = 0; d < k->q(); ++d)
        next.push_back(x + OLApprox::from_residue(F, k->coeffs(FqField::E(d)), n) * pi);
    out = std::move(next);
  }
  return out;
}

std::vector<PhiVec> enumerate_module(const PhiModule& M) {
  require(double(M.length()) * std::log2(double(M.base.ol()->q())) <= kMaxEnumLength, Code::InvalidArgument,
          "module too large to enumerate");
  auto digits = enumerate_ol(M.base.ol(), M.n(), M.n());
  int N = M.m() * M.r;
  std::vector<std::vector<OLApprox>> flats{{}};
  for (int c = 0; c < N; ++c) {
    std::vector<std::vector<OLApprox>> next;
    for (const auto& f : flats)
      for (const auto& d : digits) {
        auto g = f;
        g.push_back(d);
        next.push_back(std::move(g));
      }
    flats = std::move(next);
  }
  std::vector<PhiVec> out;
  out.reserve(flats.size());
  for (const auto& f : flats) out.push_back(from_flat(M, f));
  return out;
}

std::vector<PhiVec> brute_force_fixed(const PhiModule& M) {
  std::vector<PhiVec> out;
  for (auto& v : enumerate_module(M))
    if (M.is_fixed(v)) out.push_back(std::move(v));
  return out;
}

std::vector<PhiVec> span_of(const PhiModule& M, const FixedPoints& fp) {
  std::vector<PhiVec> acc{M.zero()};
  for (size_t t = 0; t < fp.gens.size(); ++t) {
    auto coeffs = enumerate_ol(M.base.ol(), fp.module.exps[t], M.n());
    std::vector<PhiVec> next;
    for (const auto& a : acc)
      for (const auto& c : coeffs) {
        PhiVec s = a;
        UnramExt::Elem ce = M.base.from_ol(c);
        for (int i = 0; i < M.r; ++i)
          s[size_t(i)] = M.base.add(s[size_t(i)], M.base.mul(ce, fp.gens[t][size_t(i)]));
        next.push_back(std::move(s));
      }
    acc = std::move(next);
  }
  std::set<std::string> seen;
  std::vector<PhiVec> out;
  for (auto& v : acc)
    if (seen.insert(vec_key(v)).second) out.push_back(std::move(v));
  return out;
}

std::string vec_key(const PhiVec& v) {
  std::ostringstream os;
  for (const auto& e : v) {
    for (const auto& c : e) {
      for (int64_t d : c.digits()) os << d << ",";
      os << ";";
    }
    os << "|";
  }
  return os.str();
}

}  // namespace ltp
