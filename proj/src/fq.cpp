#include "ltp/fq.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "ltp/error.hpp"

namespace ltp {

uint64_t ipow(uint64_t b, unsigned e) {
  uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

namespace fp {

PolyFp trim(PolyFp a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

PolyFp add(const PolyFp& a, const PolyFp& b, int p) {
  PolyFp r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  return trim(r);
}

PolyFp sub(const PolyFp& a, const PolyFp& b, int p) {
  PolyFp r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] - b[i] + p) % p;
  return trim(r);
}

PolyFp mul(const PolyFp& a, const PolyFp& b, int p) {
  if (a.empty() || b.empty()) return {};
  std::vector<int64_t> r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i])
      for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + int64_t(a[i]) * b[j]) % p;
  return trim(PolyFp(r.begin(), r.end()));
}

int inv_mod(int a, int p) {
  a %= p;
  if (a < 0) a += p;
  int64_t r = 1, b = a;
  for (int e = p - 2; e > 0; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return int(r);
}

PolyFp rem(PolyFp a, const PolyFp& m, int p) {
  a = trim(std::move(a));
  PolyFp mm = trim(m);
  int dm = int(mm.size()) - 1;
  int lead_inv = inv_mod(mm.back(), p);
  for (int d = int(a.size()) - 1; d >= dm; --d) {
    int c = int(int64_t(a[d]) * lead_inv % p);
    if (!c) continue;
    for (int j = 0; j <= dm; ++j) a[d - dm + j] = int((a[d - dm + j] - int64_t(c) * mm[j] % p + p) % p);
  }
  if (int(a.size()) > dm) a.resize(dm);
  return trim(a);
}

PolyFp mulmod(const PolyFp& a, const PolyFp& b, const PolyFp& m, int p) { return rem(mul(a, b, p), m, p); }

PolyFp powmod(const PolyFp& a, uint64_t e, const PolyFp& m, int p) {
  PolyFp r = rem({1}, m, p), b = rem(a, m, p);
  for (; e; e >>= 1) {
    if (e & 1) r = mulmod(r, b, m, p);
    if (e > 1) b = mulmod(b, b, m, p);
  }
  return r;
}

PolyFp gcd(PolyFp a, PolyFp b, int p) {
  a = trim(a);
  b = trim(b);
  while (!b.empty()) {
    PolyFp r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    int li = inv_mod(a.back(), p);
    for (auto& c : a) c = int(int64_t(c) * li % p);
  }
  return a;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_irreducible(const PolyFp& m0, int p) {
  PolyFp m = trim(m0);
  int n = int(m.size()) - 1;
  if (n < 1) return false;
  if (n == 1) return true;
  // Rabin: x^{p^n} = x mod m and gcd(x^{p^{n/r}} - x, m) = 1 for primes r | n.
  PolyFp x = {0, 1};
  auto frob_iter = [&](int k) {
    PolyFp y = x;
    for (int i = 0; i < k; ++i) y = powmod(y, uint64_t(p), m, p);
    return y;
  };
  if (sub(frob_iter(n), rem(x, m, p), p) != PolyFp{}) return false;
  for (uint64_t r : prime_factors(uint64_t(n))) {
    PolyFp g = gcd(m, sub(frob_iter(n / int(r)), x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

bool is_primitive(const PolyFp& m0, int p) {
  PolyFp m = trim(m0);
  int n = int(m.size()) - 1;
  uint64_t order = ipow(uint64_t(p), unsigned(n)) - 1;
  PolyFp x = {0, 1};
  if (powmod(x, order, m, p) != PolyFp{1}) return false;
  for (uint64_t r : prime_factors(order))
    if (powmod(x, order / r, m, p) == PolyFp{1}) return false;
  return true;
}

bool is_conway_compatible(const PolyFp& m0, int p) {
  PolyFp m = trim(m0);
  int n = int(m.size()) - 1;
  for (int d = 1; d < n; ++d) {
    if (n % d) continue;
    PolyFp sub_c = conway_polynomial(p, d);
    uint64_t e = (ipow(uint64_t(p), unsigned(n)) - 1) / (ipow(uint64_t(p), unsigned(d)) - 1);
    PolyFp y = powmod({0, 1}, e, m, p);
    PolyFp acc;
    for (int i = int(sub_c.size()) - 1; i >= 0; --i) acc = add(mulmod(acc, y, m, p), PolyFp{sub_c[i]}, p);
    if (!acc.empty()) return false;
  }
  return true;
}

}  // namespace fp

namespace {

const std::map<std::pair<int, int>, PolyFp>& table() {
  static const std::map<std::pair<int, int>, PolyFp> t = {
      {{2, 1}, {1, 1}},       {{2, 2}, {1, 1, 1}},    {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}}, {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{3, 1}, {1, 1}},       {{3, 2}, {2, 2, 1}},    {{3, 3}, {1, 2, 0, 1}},
      {{5, 1}, {3, 1}},       {{5, 2}, {2, 4, 1}},    {{7, 1}, {4, 1}},
      {{7, 2}, {3, 6, 1}},    {{11, 1}, {9, 1}},      {{13, 1}, {11, 1}},
      {{17, 1}, {14, 1}},     {{19, 1}, {17, 1}},     {{23, 1}, {18, 1}},
      {{29, 1}, {27, 1}},     {{31, 1}, {28, 1}},     {{37, 1}, {35, 1}},
      {{41, 1}, {35, 1}},     {{43, 1}, {40, 1}},     {{47, 1}, {42, 1}},
  };
  return t;
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

bool conway_in_table(int p, int n) { return table().count({p, n}) > 0; }

std::vector<std::pair<int, int>> conway_table_entries() {
  std::vector<std::pair<int, int>> out;
  for (const auto& [k, v] : table()) out.push_back(k);
  return out;
}

PolyFp conway_search(int p, int n) {
  require(fp::is_prime(p) && n >= 1, Code::InvalidArgument, "conway_search needs prime p and n >= 1");
  require(ipow(uint64_t(p), unsigned(n)) < (uint64_t(1) << 40), Code::InvalidArgument, "field too large");
  // Conway order: x^n - c1 x^{n-1} + c2 x^{n-2} - ..., (c1..cn) lexicographic.
  std::vector<int> c(n, 0);
  while (true) {
    PolyFp m(n + 1, 0);
    m[n] = 1;
    for (int i = 1; i <= n; ++i) {
      int s = (i % 2) ? (p - c[i - 1]) % p : c[i - 1];
      m[n - i] = s;
    }
    if (m[0] != 0 && fp::is_irreducible(m, p) && fp::is_primitive(m, p) && fp::is_conway_compatible(m, p))
      return m;
    int k = n - 1;
    while (k >= 0 && c[k] == p - 1) c[k--] = 0;
    if (k < 0) break;
    ++c[k];
  }
  fail(Code::IntegrityFailure, "no Conway polynomial found");
}

PolyFp conway_polynomial(int p, int n) {
  auto it = table().find({p, n});
  if (it != table().end()) return it->second;
  static std::map<std::pair<int, int>, PolyFp> memo;
  {
    std::lock_guard<std::mutex> lk(registry_mutex());
    auto m = memo.find({p, n});
    if (m != memo.end()) return m->second;
  }
  PolyFp r = conway_search(p, n);
  std::lock_guard<std::mutex> lk(registry_mutex());
  memo[{p, n}] = r;
  return r;
}

FqField::FqField(int p, int f, PolyFp modulus) : p_(p), f_(f), modulus_(fp::trim(std::move(modulus))) {
  require(fp::is_prime(p), Code::InvalidArgument, "p must be prime");
  require(f >= 1 && int(modulus_.size()) == f + 1 && modulus_.back() == 1, Code::InvalidArgument,
          "modulus must be monic of degree f");
  require(fp::is_irreducible(modulus_, p), Code::InvalidArgument, "modulus is reducible over F_p");
  uint64_t q = ipow(uint64_t(p), unsigned(f));
  require(q <= uint64_t(kMaxQ), Code::InvalidArgument, "FqField supports q <= 256");
  q_ = int(q);
  std::vector<PolyFp> polys(q_);
  for (int a = 0; a < q_; ++a) {
    PolyFp c(f_, 0);
    for (int i = 0, t = a; i < f_; ++i, t /= p_) c[i] = t % p_;
    polys[a] = c;
  }
  auto index = [&](const PolyFp& c) {
    int r = 0;
    for (int i = int(c.size()) - 1; i >= 0; --i) r = r * p_ + c[i];
    return E(r);
  };
  add_.resize(size_t(q_) * q_);
  sub_.resize(size_t(q_) * q_);
  mul_.resize(size_t(q_) * q_);
  inv_.assign(q_, 0);
  for (int a = 0; a < q_; ++a)
    for (int b = 0; b < q_; ++b) {
      PolyFp s(f_), d(f_);
      for (int i = 0; i < f_; ++i) {
        s[i] = (polys[a][i] + polys[b][i]) % p_;
        d[i] = (polys[a][i] - polys[b][i] + p_) % p_;
      }
      add_[a * q_ + b] = index(s);
      sub_[a * q_ + b] = index(d);
      mul_[a * q_ + b] = index(fp::mulmod(polys[a], polys[b], modulus_, p_));
    }
  for (int a = 1; a < q_; ++a)
    for (int b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) inv_[a] = E(b);
  gen_ = index(fp::rem({0, 1}, modulus_, p_));
}

std::shared_ptr<const FqField> FqField::get(int p, int f) {
  static std::map<std::pair<int, int>, std::shared_ptr<const FqField>> reg;
  {
    std::lock_guard<std::mutex> lk(registry_mutex());
    auto it = reg.find({p, f});
    if (it != reg.end()) return it->second;
  }
  auto fld = std::make_shared<const FqField>(p, f, conway_polynomial(p, f));
  std::lock_guard<std::mutex> lk(registry_mutex());
  return reg.emplace(std::make_pair(p, f), fld).first->second;
}

FqField::E FqField::inv(E a) const {
  require(a != 0, Code::NotUnit, "inverse of 0 in F_q");
  return inv_[a];
}

FqField::E FqField::pow(E a, uint64_t e) const {
  E r = 1;
  for (; e; e >>= 1) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
  }
  return r;
}

FqField::E FqField::from_int(int64_t n) const {
  int64_t r = n % p_;
  if (r < 0) r += p_;
  return E(r);
}

FqField::E FqField::from_coeffs(const std::vector<int>& c) const {
  PolyFp pc;
  for (int v : c) pc.push_back(((v % p_) + p_) % p_);
  pc = fp::rem(pc, modulus_, p_);
  int r = 0;
  for (int i = int(pc.size()) - 1; i >= 0; --i) r = r * p_ + pc[i];
  return E(r);
}

std::vector<int> FqField::coeffs(E a) const {
  std::vector<int> c(f_, 0);
  for (int i = 0, t = a; i < f_; ++i, t /= p_) c[i] = t % p_;
  return c;
}

std::string FqField::str(E a) const {
  if (f_ == 1) return std::to_string(int(a));
  std::ostringstream os;
  auto c = coeffs(a);
  bool first = true;
  for (int i = f_ - 1; i >= 0; --i) {
    if (!c[i]) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || c[i] != 1) os << c[i];
    if (i > 0) os << (c[i] != 1 ? "*" : "") << "x" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace ltp
