#include "ltp/witt.hpp"

#include <boost/crc.hpp>
#include <fstream>
#include <unordered_map>

#include "json.hpp"

namespace ltp {

namespace {

constexpr int kCacheFormatVersion = 1;

struct MonoHash {
  size_t operator()(const WittMono& m) const {
    uint64_t h = 1469598103934665603ull;
    for (auto e : m) h = (h ^ e) * 1099511628211ull;
    return size_t(h);
  }
};

using Accum = std::unordered_map<WittMono, OLApprox, MonoHash>;

WittPoly from_accum(Accum&& acc) {
  WittPoly p;
  p.terms.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero()) p.terms.push_back({m, c});
  std::sort(p.terms.begin(), p.terms.end(), [](const WittTerm& a, const WittTerm& b) { return a.m < b.m; });
  return p;
}

void accumulate(Accum& acc, const WittMono& m, const OLApprox& c) {
  auto [it, fresh] = acc.try_emplace(m, c);
  if (!fresh) it->second = it->second + c;
}

WittPoly poly_add(const WittPoly& a, const WittPoly& b, bool subtract = false) {
  Accum acc;
  for (const auto& t : a.terms) accumulate(acc, t.m, t.c);
  for (const auto& t : b.terms) accumulate(acc, t.m, subtract ? -t.c : t.c);
  return from_accum(std::move(acc));
}

WittPoly poly_mul(const WittPoly& a, const WittPoly& b) {
  Accum acc;
  acc.reserve(a.size() * 4 + b.size() * 4);
  for (const auto& s : a.terms)
    for (const auto& t : b.terms) {
      WittMono m;
      for (size_t i = 0; i < m.size(); ++i) {
        uint32_t e = uint32_t(s.m[i]) + t.m[i];
        require(e < 65536, Code::InvalidArgument, "Witt exponent overflow");
        m[i] = uint16_t(e);
      }
      accumulate(acc, m, s.c * t.c);
    }
  return from_accum(std::move(acc));
}

WittPoly poly_scale(const WittPoly& a, const OLApprox& c) {
  WittPoly r;
  for (const auto& t : a.terms) {
    OLApprox v = t.c * c;
    if (!v.is_zero()) r.terms.push_back({t.m, v});
  }
  return r;
}

WittPoly poly_const(const OLApprox& c) {
  WittPoly r;
  if (!c.is_zero()) r.terms.push_back({WittMono{}, c});
  return r;
}

WittPoly poly_pow(const WittPoly& a, uint64_t n, int prec) {
  WittPoly r = poly_const(OLApprox::from_int(a.terms.empty() ? nullptr : a.terms[0].c.field(), 1, prec));
  if (a.terms.empty()) return n == 0 ? r : WittPoly{};
  WittPoly b = a;
  for (; n; n >>= 1) {
    if (n & 1) r = poly_mul(r, b);
    if (n > 1) b = poly_mul(b, b);
  }
  return r;
}

WittPoly poly_div_pi(const WittPoly& a, int k, WittOp op, int idx) {
  WittPoly r;
  for (const auto& t : a.terms) {
    try {
      OLApprox v = t.c.div_pi(k);
      if (!v.is_zero()) r.terms.push_back({t.m, v});
    } catch (const Error& e) {
      fail(Code::IntegrityFailure, std::string("universal polynomial ") + witt_op_name(op) + "_" +
                                       std::to_string(idx) + " has a coefficient not divisible by pi^" +
                                       std::to_string(k) + ": " + e.what());
    }
  }
  return r;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<const OLField*, std::vector<std::shared_ptr<UniversalPolys>>>& registry() {
  static std::map<const OLField*, std::vector<std::shared_ptr<UniversalPolys>>> r;
  return r;
}

std::string op_key(WittOp op) { return witt_op_name(op); }

WittOp op_from_key(const std::string& s) {
  for (WittOp op : {WittOp::Sum, WittOp::Prod, WittOp::Neg, WittOp::Frob})
    if (s == witt_op_name(op)) return op;
  fail(Code::IntegrityFailure, "unknown polynomial family '" + s + "'");
}

nlohmann::json field_key(const OLField* F) {
  const auto& c = F->config();
  return {{"p", c.p}, {"f", c.f}, {"e", c.e}, {"q", F->q()}, {"eisenstein", c.eisenstein},
          {"conway_override", c.conway_override}};
}

uint32_t crc_of(const std::string& s) {
  boost::crc_32_type crc;
  crc.process_bytes(s.data(), s.size());
  return crc.checksum();
}

}  // namespace

const char* witt_op_name(WittOp op) {
  switch (op) {
    case WittOp::Sum: return "S";
    case WittOp::Prod: return "M";
    case WittOp::Neg: return "N";
    case WittOp::Frob: return "F";
  }
  return "?";
}

WittPoly ghost_poly(const OLField* F, int k, int base, int W) {
  WittPoly p;
  for (int i = 0; i <= k; ++i) {
    WittMono m{};
    uint64_t e = ipow(uint64_t(F->q()), unsigned(k - i));
    require(e < 65536, Code::InvalidArgument, "Witt exponent overflow");
    m[size_t(base + i)] = uint16_t(e);
    p.terms.push_back({m, OLApprox::pi_power(F, i, W)});
  }
  std::sort(p.terms.begin(), p.terms.end(), [](const WittTerm& a, const WittTerm& b) { return a.m < b.m; });
  return p;
}

UniversalPolys::UniversalPolys(const OLField* F, int P) : F_(F), P_(P) {
  W_ = P + kWittMaxLen;
  require(W_ <= F->max_prec(), Code::InsufficientPrecision,
          "Witt polynomial precision " + std::to_string(P) + " exceeds the supported range for " + F->describe());
}

std::shared_ptr<UniversalPolys> UniversalPolys::get(const OLField* F, int P) {
  std::lock_guard<std::mutex> lk(registry_mutex());
  auto& v = registry()[F];
  for (auto& c : v)
    if (c->prec() >= P) return c;
  auto c = std::make_shared<UniversalPolys>(F, P);
  v.push_back(c);
  return c;
}

std::shared_ptr<UniversalPolys> build_universal_cache(const OLField* F, int len, int prec) {
  auto c = UniversalPolys::get(F, prec);
  c->build_all(len);
  return c;
}

const WittPoly& UniversalPolys::poly(WittOp op, int k) {
  require(k >= 0 && k < kWittMaxLen, Code::InvalidArgument, "Witt index out of range");
  std::lock_guard<std::mutex> lk(mu_);
  auto& v = polys_[op];
  while (int(v.size()) <= k) build(op, int(v.size()));
  return v[size_t(k)];
}

int UniversalPolys::built(WittOp op) {
  std::lock_guard<std::mutex> lk(mu_);
  return int(polys_[op].size());
}

void UniversalPolys::build_all(int len) {
  for (WittOp op : {WittOp::Sum, WittOp::Prod, WittOp::Neg, WittOp::Frob}) poly(op, len - 1);
}

// P_k = (G_k - sum_{i<k} pi^i P_i^{q^{k-i}}) / pi^k. P_i is stored at
// precision W - i and pow_cache holds P_i^{q^{k-1-i}}.
void UniversalPolys::build(WittOp op, int k) {
  auto& v = polys_[op];
  auto& pc = pow_cache_[op];
  const int q = int(F_->q());
  WittPoly G;
  switch (op) {
    case WittOp::Sum: G = poly_add(ghost_poly(F_, k, witt_x(0), W_), ghost_poly(F_, k, witt_y(0), W_)); break;
    case WittOp::Prod: G = poly_mul(ghost_poly(F_, k, witt_x(0), W_), ghost_poly(F_, k, witt_y(0), W_)); break;
    case WittOp::Neg: G = poly_scale(ghost_poly(F_, k, witt_x(0), W_), OLApprox::from_int(F_, -1, W_)); break;
    case WittOp::Frob:
      require(k + 1 < kWittMaxLen, Code::InvalidArgument, "Frobenius polynomial index out of range");
      G = ghost_poly(F_, k + 1, witt_x(0), W_);
      break;
  }
  if (int(pc.size()) != k) {
    // Stale after loading from disk: rebuild P_i^{q^{k-1-i}}.
    pc.clear();
    for (int i = 0; i < k; ++i) {
      WittPoly t = v[size_t(i)];
      for (int j = i + 1; j < k; ++j) t = poly_pow(t, uint64_t(q), W_ - i);
      pc.push_back(t);
    }
  }
  for (int i = 0; i < k; ++i) {
    pc[size_t(i)] = poly_pow(pc[size_t(i)], uint64_t(q), W_ - i);
    G = poly_add(G, poly_scale(pc[size_t(i)], OLApprox::pi_power(F_, i, W_)), true);
  }
  WittPoly Pk = poly_div_pi(G, k, op, k);
  v.push_back(Pk);
  pc.push_back(Pk);
}

bool UniversalPolys::ghost_check(int len, uint64_t seed, int samples) {
  Rng g(seed);
  const int P = P_;
  OLRing O(F_, P);
  for (int s = 0; s < samples; ++s) {
    std::vector<OLApprox> X, Y;
    for (int i = 0; i < kWittMaxLen; ++i) {
      X.push_back(O.random(g));
      Y.push_back(O.random(g));
    }
    auto ev = [&](const WittPoly& p) {
      OLApprox acc = O.zero();
      for (const auto& t : p.terms) {
        OLApprox m = t.c.with_prec(P);
        for (int i = 0; i < kWittMaxLen; ++i) {
          if (t.m[size_t(witt_x(i))]) m = m * X[size_t(i)].pow(t.m[size_t(witt_x(i))]);
          if (t.m[size_t(witt_y(i))]) m = m * Y[size_t(i)].pow(t.m[size_t(witt_y(i))]);
        }
        acc = acc + m;
      }
      return acc;
    };
    auto ghost = [&](const std::vector<OLApprox>& xs, int n) {
      OLApprox acc = O.zero();
      for (int i = 0; i <= n; ++i)
        acc = acc + OLApprox::pi_power(F_, i, P) * xs[size_t(i)].pow(ipow(uint64_t(F_->q()), unsigned(n - i)));
      return acc;
    };
    for (WittOp op : {WittOp::Sum, WittOp::Prod, WittOp::Neg, WittOp::Frob}) {
      int top = std::min(len, int(polys_[op].size()));
      std::vector<OLApprox> vals;
      for (int k = 0; k < top; ++k) vals.push_back(ev(polys_[op][size_t(k)]));
      for (int k = 0; k < top; ++k) {
        OLApprox lhs = ghost(vals, k), rhs;
        switch (op) {
          case WittOp::Sum: rhs = ghost(X, k) + ghost(Y, k); break;
          case WittOp::Prod: rhs = ghost(X, k) * ghost(Y, k); break;
          case WittOp::Neg: rhs = -ghost(X, k); break;
          case WittOp::Frob: rhs = ghost(X, k + 1); break;
        }
        if (!lhs.equals(rhs)) return false;
      }
    }
  }
  return true;
}

void UniversalPolys::save(const std::string& path, int len) {
  build_all(len);
  nlohmann::json polys = nlohmann::json::object();
  {
    std::lock_guard<std::mutex> lk(mu_);
    for (auto& [op, v] : polys_) {
      nlohmann::json fam = nlohmann::json::array();
      for (int k = 0; k < std::min(len, int(v.size())); ++k) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& t : v[size_t(k)].terms)
          terms.push_back({std::vector<int>(t.m.begin(), t.m.end()), t.c.digits(), t.c.prec()});
        fam.push_back(terms);
      }
      polys[op_key(op)] = fam;
    }
  }
  std::string body = polys.dump();
  nlohmann::json doc = {{"format", "ltp-witt-polys"},
                        {"version", kCacheFormatVersion},
                        {"field", field_key(F_)},
                        {"prec", P_},
                        {"len", len},
                        {"crc32", crc_of(body)},
                        {"polys", polys}};
  std::ofstream out(path);
  require(bool(out), Code::InvalidArgument, "cannot write " + path);
  out << doc.dump() << "\n";
}

std::shared_ptr<UniversalPolys> UniversalPolys::load(const std::string& path, const OLField* F) {
  std::ifstream in(path);
  require(bool(in), Code::InvalidArgument, "cannot read " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const std::exception&) {
    fail(Code::IntegrityFailure, "polynomial cache " + path + " is not valid JSON");
  }
  try {
    require(doc.at("format") == "ltp-witt-polys", Code::IntegrityFailure, "not a polynomial cache");
    require(doc.at("version") == kCacheFormatVersion, Code::IntegrityFailure, "unsupported cache version");
    require(doc.at("field") == field_key(F), Code::IntegrityFailure, "cache built for a different field");
    const auto& polys = doc.at("polys");
    require(crc_of(polys.dump()) == doc.at("crc32").get<uint32_t>(), Code::IntegrityFailure,
            "checksum mismatch in " + path);
    int P = doc.at("prec").get<int>();
    int len = doc.at("len").get<int>();
    auto c = std::make_shared<UniversalPolys>(F, P);
    for (auto it = polys.begin(); it != polys.end(); ++it) {
      WittOp op = op_from_key(it.key());
      for (const auto& fam : it.value()) {
        WittPoly p;
        for (const auto& t : fam) {
          WittTerm term;
          auto ex = t.at(0).get<std::vector<int>>();
          require(ex.size() == term.m.size(), Code::IntegrityFailure, "bad exponent vector");
          for (size_t i = 0; i < ex.size(); ++i) term.m[i] = uint16_t(ex[i]);
          term.c = OLApprox::make(F, t.at(1).get<std::vector<int64_t>>(), t.at(2).get<int>());
          p.terms.push_back(term);
        }
        c->polys_[op].push_back(p);
      }
    }
    require(c->ghost_check(len, 0x5eed, 2), Code::IntegrityFailure,
            "polynomial cache " + path + " fails the ghost identities");
    std::lock_guard<std::mutex> lk(registry_mutex());
    auto& v = registry()[F];
    v.insert(v.begin(), c);
    return c;
  } catch (const nlohmann::json::exception& e) {
    fail(Code::IntegrityFailure, std::string("malformed polynomial cache: ") + e.what());
  }
}

OLApprox witt_fq_to_ol(const OLField* F, const std::vector<FqField::E>& coords) {
  const FqField* k = F->residue_field();
  require(k != nullptr, Code::InvalidArgument, "residue field too large");
  int n = int(coords.size());
  OLApprox acc = OLApprox::zero(F, n);
  for (int i = 0; i < n; ++i)
    acc = acc + teichmuller_lift(F, k->coeffs(coords[size_t(i)]), n) * OLApprox::pi_power(F, i, n);
  return acc;
}

}  // namespace ltp
