#include "ltp/series.hpp"

#include <cctype>

namespace ltp {

namespace {

std::vector<std::string> split_terms(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if ((ch == '+' || ch == '-') && depth == 0 && !cur.empty() && cur.back() != '^' && cur.back() != '*') {
      out.push_back(cur);
      cur.clear();
    }
    cur.push_back(ch);
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

int parse_int(const std::string& s) {
  size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    fail(Code::BadConfig, "cannot parse integer '" + s + "'");
  }
  require(pos == s.size(), Code::BadConfig, "cannot parse integer '" + s + "'");
  return v;
}

}  // namespace

OLSeries parse_ol_series(const OLSeriesRing& S, const std::string& text) {
  const OLField* F = S.base.F;
  const int P = S.base.P;
  int N = S.N;
  std::vector<std::pair<int, OLApprox>> terms;
  for (std::string t : split_terms(text)) {
    bool neg = false;
    if (t[0] == '+' || t[0] == '-') {
      neg = t[0] == '-';
      t = t.substr(1);
    }
    require(!t.empty(), Code::BadConfig, "empty term in series '" + text + "'");
    if (t.rfind("O(", 0) == 0) {
      require(t.size() > 5 && t.substr(0, 4) == "O(T^" && t.back() == ')', Code::BadConfig, "bad O-term " + t);
      N = std::min(N, parse_int(t.substr(4, t.size() - 5)));
      continue;
    }
    OLApprox c = OLApprox::from_int(F, neg ? -1 : 1, P);
    int deg = 0;
    size_t start = 0;
    while (start <= t.size()) {
      size_t star = t.find('*', start);
      std::string f = t.substr(start, star == std::string::npos ? std::string::npos : star - start);
      require(!f.empty(), Code::BadConfig, "bad factor in '" + t + "'");
      std::string b = f, ex = "1";
      if (auto h = f.find('^'); h != std::string::npos) {
        b = f.substr(0, h);
        ex = f.substr(h + 1);
      }
      int k = parse_int(ex);
      require(k >= 0, Code::BadConfig, "negative exponent in '" + t + "'");
      if (b == "T") deg += k;
      else if (b == "pi") c = c * OLApprox::pi_power(F, k, P);
      else c = c * OLApprox::from_int(F, parse_int(b), P).pow(uint64_t(k));
      if (star == std::string::npos) break;
      start = star + 1;
    }
    terms.emplace_back(deg, c);
  }
  OLSeries s = S.make(0, N);
  for (auto& [d, c] : terms)
    if (d < N) s.c[size_t(d)] = s.c[size_t(d)] + c;
  return s;
}

}  // namespace ltp
