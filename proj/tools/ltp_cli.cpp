#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ltp/phimod.hpp"
#include "ltp/prism.hpp"
#include "ltp/suites.hpp"
#include "ltp/tower.hpp"
#include "ltp/witt.hpp"

using namespace ltp;
using json = nlohmann::json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitIntegrity = 2;
constexpr int kExitConfig = 64;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), Code::BadConfig, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<int64_t> parse_ints(const std::string& s) {
  std::vector<int64_t> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stoll(tok));
    } catch (const std::exception&) {
      fail(Code::BadConfig, "not an integer list: " + s);
    }
  }
  return out;
}

std::string law_text(const LTGroup& G) {
  const auto& H = G.law();
  std::ostringstream os;
  bool first = true;
  for (int d = 0; d < G.N(); ++d)
    for (int a = d; a >= 0; --a) {
      const OLApprox& c = H[size_t(d)][size_t(a)];
      if (c.is_zero()) continue;
      std::string cs = c.repr();
      bool neg = cs[0] == '-';
      if (neg) cs = cs.substr(1);
      std::string mono;
      if (a) mono += a == 1 ? "X" : "X^" + std::to_string(a);
      if (d - a) mono += std::string(a ? "*" : "") + (d - a == 1 ? "Y" : "Y^" + std::to_string(d - a));
      os << (first ? (neg ? "-" : "") : (neg ? " - " : " + ")) << (cs == "1" ? mono : cs + "*" + mono);
      first = false;
    }
  if (first) os << "0";
  os << " + O(deg " << G.N() << ")";
  return os.str();
}

OLApprox parse_elt(const OLField* F, const std::string& s, int P) {
  if (s == "pi") return OLApprox::pi_power(F, 1, P);
  auto v = parse_ints(s);
  require(v.size() == 1, Code::BadConfig, "element must be 'pi' or an integer");
  return OLApprox::from_int(F, v[0], P);
}

PhiModule load_module(const std::string& path) {
  std::string text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error&) {
    fail(Code::BadConfig, "module file " + path + " is not valid JSON");
  }
  try {
    OLConfig oc{j.value("p", 3), j.value("f", 1), j.value("e", 1), {}, {}};
    if (j.contains("eisenstein_coeffs")) j.at("eisenstein_coeffs").get_to(oc.eisenstein);
    if (j.contains("conway_override")) j.at("conway_override").get_to(oc.conway_override);
    const OLField* F = OLField::get(oc);
    int n = j.at("n").get<int>(), m = j.at("m").get<int>(), r = j.at("r").get<int>();
    require(n >= 1 && m >= 1 && r >= 1, Code::BadConfig, "n, m, r must be positive");
    auto B = UnramExt::get(F, m, n);
    const json& mat = j.at("matrix");
    require(mat.is_array() && int(mat.size()) == r, Code::BadConfig, "matrix must have r rows");
    std::vector<std::vector<UnramExt::Elem>> A;
    for (const auto& row : mat) {
      require(row.is_array() && int(row.size()) == r, Code::BadConfig, "matrix rows must have r entries");
      std::vector<UnramExt::Elem> out;
      for (const auto& ent : row) {
        UnramExt::Elem e = B.zero();
        if (ent.is_number_integer()) {
          e = B.from_int(ent.get<int64_t>());
        } else {
          require(ent.is_array() && int(ent.size()) <= m, Code::BadConfig, "entry must list at most m coefficients");
          for (size_t k = 0; k < ent.size(); ++k) {
            const json& c = ent[k];
            e[k] = c.is_number_integer() ? OLApprox::from_int(F, c.get<int64_t>(), n)
                                         : OLApprox::make(F, c.get<std::vector<int64_t>>(), n);
          }
        }
        out.push_back(e);
      }
      A.push_back(out);
    }
    return PhiModule::make(B, A);
  } catch (const json::exception& e) {
    fail(Code::BadConfig, std::string("module file: ") + e.what());
  }
}

std::string vec_text(const PhiModule& M, const PhiVec& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + M.base.str(v[i]);
  return s + ")";
}

int exit_for(const Error& e) {
  switch (e.code()) {
    case Code::IntegrityFailure: return kExitIntegrity;
    case Code::BadConfig: return kExitConfig;
    default: return kExitFail;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lubin-Tate, Witt vector and prism verification toolkit"};
  app.set_version_flag("--version", kToolVersion);
  std::string config_path, suite_list, out_path;
  uint64_t seed = 0;
  int samples = -1;
  bool show_timings = false;
  auto* o_seed = app.add_option("--seed", seed, "RNG seed");
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--suite", suite_list, "comma-separated suites");
  app.add_option("--out", out_path, "report path (default stdout)");
  app.add_option("--samples", samples, "override every sample count");
  app.add_flag("--timings", show_timings, "print per-check wall times");

  int n = 1, m = 1, depth = 3, prec = -1, trunc = -1, len = 2, steps = 24;
  std::string elt = "pi", coords, xs, ys, a_str = "2", module_path;
  auto common = [&](CLI::App* s) {
    s->add_option("--n", n);
    s->add_option("--m", m);
    s->add_option("--depth", depth);
    s->add_option("--prec", prec);
    s->add_option("--trunc", trunc);
  };
  auto* c_law = app.add_subcommand("lt-law", "print the formal group law");
  auto* c_endo = app.add_subcommand("lt-endo", "print [a](T)");
  c_endo->add_option("--a", a_str, "integer a");
  auto* c_qn = app.add_subcommand("qn", "print q_n(T)");
  auto* c_wadd = app.add_subcommand("witt-add", "add Witt vectors over F_q");
  c_wadd->add_option("--x", xs)->required();
  c_wadd->add_option("--y", ys)->required();
  auto* c_ghost = app.add_subcommand("ghost", "ghost components over O_L");
  c_ghost->add_option("--coords", coords)->required();
  auto* c_delta = app.add_subcommand("delta", "delta of an element of O_L");
  c_delta->add_option("--elt", elt, "'pi' or an integer");
  auto* c_theta = app.add_subcommand("theta", "theta o phi^-n o iota against iota_n");
  c_theta->add_option("--len", len);
  auto* c_log = app.add_subcommand("log-prism", "prismatic logarithm classes of [a pi^n](T)");
  c_log->add_option("--a", a_str, "integer a");
  auto* c_fixed = app.add_subcommand("fixed", "fixed points of a phi-module");
  auto* c_herr = app.add_subcommand("herr", "H0 and H1 of a phi-module");
  auto* c_stab = app.add_subcommand("stabilize", "base change until the fixed points are full");
  c_stab->add_option("--steps", steps);
  auto* c_cache = app.add_subcommand("cache-save", "write the universal Witt polynomial cache");
  for (auto* s : {c_law, c_endo, c_qn, c_wadd, c_ghost, c_delta, c_theta, c_log, c_cache}) common(s);
  for (auto* s : {c_fixed, c_herr, c_stab}) s->add_option("--module", module_path)->required();
  c_cache->add_option("--len", len);
  c_cache->add_option("--path", out_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) cfg = RunConfig::parse(read_file(config_path));
    if (*o_seed) cfg.seed = seed;
    if (!suite_list.empty()) {
      cfg.suites.clear();
      std::stringstream ss(suite_list);
      std::string s;
      while (std::getline(ss, s, ','))
        if (!s.empty()) cfg.suites.push_back(s);
    }
    if (samples >= 0)
      cfg.samples_witt = cfg.samples_delta = cfg.lt_pairs = cfg.theta_series = cfg.herr_modules = samples;
    const OLField* F = cfg.field();
    int P = prec > 0 ? prec : 5;
    int N = trunc > 0 ? trunc : 40;

    if (*c_law) {
      std::cout << law_text(*cfg.group(trunc > 0 ? trunc : 10, P)) << "\n";
    } else if (*c_endo) {
      auto G = cfg.group(N, P);
      std::cout << G->ring().str(G->endo(OLApprox::from_int(F, parse_ints(a_str).at(0), G->work_prec()))) << "\n";
    } else if (*c_qn) {
      auto G = cfg.group(N, P);
      std::cout << G->ring().str(G->qn(n)) << "\n";
    } else if (*c_wadd) {
      auto x = parse_ints(xs), y = parse_ints(ys);
      require(x.size() == y.size() && !x.empty(), Code::BadConfig, "--x and --y need the same positive length");
      FqRing k = FqRing::make(F, 1);
      WittRing<FqRing> W(k, int(x.size()));
      std::vector<FqField::E> cx, cy;
      for (auto v : x) cx.push_back(k.from_int(v));
      for (auto v : y) cy.push_back(k.from_int(v));
      std::cout << W.str(W.add(W.from_coords(cx), W.from_coords(cy))) << "\n";
    } else if (*c_ghost) {
      auto c = parse_ints(coords);
      require(!c.empty(), Code::BadConfig, "--coords needs at least one entry");
      OLRing O(F, P);
      WittRing<OLRing> W(O, int(c.size()));
      std::vector<OLApprox> v;
      for (auto x : c) v.push_back(O.from_int(x));
      auto g = W.ghost(W.from_coords(v));
      std::cout << "(";
      for (size_t i = 0; i < g.size(); ++i) std::cout << (i ? ", " : "") << g[i].repr();
      std::cout << ")\n";
    } else if (*c_delta) {
      DeltaRing<OLRing> D{OLRing(F, P)};
      std::cout << D.delta(parse_elt(F, elt, P)).str() << "\n";
    } else if (*c_theta) {
      require(depth >= n, Code::BadConfig, "depth must be at least n");
      auto G = cfg.group(10, P);
      auto rep = verify_theta_phi_iota(*G, n, depth, len, 4, cfg.seed);
      for (const auto& s : rep.samples) std::cout << s.f << ": " << (s.ok ? "ok" : "MISMATCH") << "\n";
      std::cout << rep.check.detail << "\n";
      return rep.check.pass ? 0 : kExitFail;
    } else if (*c_log) {
      auto G = cfg.group(trunc > 0 ? trunc : 60, P);
      auto a = OLApprox::from_int(F, parse_ints(a_str).at(0), G->work_prec());
      for (const auto& k : log_prism(*G, a, n, m)) std::cout << "m=" << k.m << ": " << G->ring().str(k.rep) << "\n";
    } else if (*c_fixed) {
      auto M = load_module(module_path);
      auto fp = fixed_points(M);
      std::cout << "fixed = " << fp.module.str() << " (size " << fp.module.size() << ")\n";
      for (size_t i = 0; i < fp.gens.size(); ++i)
        std::cout << "gen " << i << " (order pi^" << fp.module.exps[i] << "): " << vec_text(M, fp.gens[i]) << "\n";
    } else if (*c_herr) {
      auto M = load_module(module_path);
      auto h = herr_h0_h1(M);
      std::cout << "H0 = " << h.h0.str() << " (size " << h.h0.size() << ")\n";
      std::cout << "H1 = " << h.h1.str() << " (size " << h.h1.size() << ")\n";
    } else if (*c_stab) {
      auto M = load_module(module_path);
      auto st = stabilization_check(M, steps);
      std::cout << (st.reached ? "m* = " + std::to_string(st.m_star) : std::string("NOT_REACHED")) << "\ntrace:";
      for (int l : st.length_trace) std::cout << " " << l;
      std::cout << "\n";
    } else if (*c_cache) {
      auto U = build_universal_cache(F, len, P);
      U->save(out_path, len);
      std::cout << "wrote " << out_path << "\n";
    } else {
      cfg.validate();
      auto recs = run_suites(cfg);
      json report = full_report(cfg, recs);
      std::string text = report.dump(2) + "\n";
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_path);
        require(bool(out), Code::InvalidArgument, "cannot write " + out_path);
        out << text;
      }
      bool ok = true;
      for (const auto& r : recs) {
        ok &= r.status != CheckStatus::Fail;
        std::cerr << status_name(r.status) << " " << r.result.id;
        if (show_timings) std::cerr << " " << r.seconds << "s";
        std::cerr << "\n";
      }
      return ok ? 0 : kExitFail;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e);
  }
  return 0;
}
