#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "ltp/check.hpp"
#include "ltp/lubintate.hpp"
#include "ltp/ol.hpp"

namespace ltp {

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr const char* kReportSchema = "ltp-report/1";

const std::vector<std::string>& all_suites();

struct RunConfig {
  OLConfig ring;
  LTPreset lt = LTPreset::Standard;
  // Explicit Frobenius polynomial: ascending coefficients as O_L digit vectors.
  std::vector<std::vector<int64_t>> lt_coeffs;
  int prec = 6;
  int lt_trunc = 30;
  int witness_trunc = 40;
  int witness_n = 3;
  int gamma_trunc = 40;
  std::vector<int64_t> gamma_units{2, 4, 5};
  int gamma_n = 2;
  int log_trunc = 60;
  int log_n = 1;
  int log_levels = 3;
  int tower_n = 2;
  int tower_depth = 3;
  int tower_len = 3;
  std::vector<int> witt_q{2, 3, 4, 5};
  int witt_max_len = 4;
  int witt_prec = 6;
  std::string witt_cache;
  int samples_witt = 200;
  int samples_delta = 200;
  int lt_pairs = 30;
  int theta_series = 30;
  int herr_modules = 100;
  int stabilize_steps = 24;
  uint64_t seed = 1;
  std::vector<std::string> suites = all_suites();

  nlohmann::json to_json() const;
  // BAD_CONFIG with the offending key and its line in text when available.
  static RunConfig from_json(const nlohmann::json& j, const std::string& text = "");
  static RunConfig parse(const std::string& text);
  void validate() const;
  const OLField* field() const;
  std::shared_ptr<const LTGroup> group(int N, int P) const;
};

enum class CheckStatus { Pass, Fail, Skipped };
const char* status_name(CheckStatus s);

struct CheckRecord {
  CheckResult result;
  nlohmann::json params = nlohmann::json::object();
  CheckStatus status = CheckStatus::Fail;
  double seconds = 0;
};

std::vector<CheckRecord> run_suite(const std::string& name, const RunConfig& cfg);
std::vector<CheckRecord> run_suites(const RunConfig& cfg);

uint32_t crc32_of(const std::string& s);
std::string crc32_hex(const std::string& s);

// Everything except wall times; identical for identical (config, seed).
nlohmann::json report_body(const RunConfig& cfg, const std::vector<CheckRecord>& recs);
nlohmann::json full_report(const RunConfig& cfg, const std::vector<CheckRecord>& recs);

// Individual checks, shared with the acceptance driver.
CheckResult check_witt_laws(const OLField* F, int len, int samples, int prec, uint64_t seed);
CheckResult check_w2_fq_is_ol_mod_pi2(const OLField* F);
CheckResult check_teichmuller_sum(const OLField* F);
CheckResult check_delta_pi(const OLField* F, int P);
std::vector<CheckResult> check_lt_law(const LTGroup& G);
std::vector<CheckResult> check_lt_endo(const LTGroup& G, int pairs, uint64_t seed);
CheckResult check_lt_pi_mod_pi(const LTGroup& G);
CheckResult check_cyclotomic_law(int p, int N, int P);
CheckResult check_gamma(const LTGroup& G, const OLApprox& u, int n, int samples, uint64_t seed);
CheckResult check_theta_pinned(const LTGroup& G, int depth, int len);
CheckResult check_phimod_brute_force(const OLField* F, int m, int n, int r, int randoms, uint64_t seed);
CheckResult check_phimod_examples(const OLField* F);
CheckResult check_phimod_herr(const OLField* F, int modules, uint64_t seed);
CheckResult check_phimod_stabilization(const OLField* F, int per_base, int max_steps, uint64_t seed);

}  // namespace ltp
