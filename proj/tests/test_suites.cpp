#include <optional>

#include "doctest.h"
#include "ltp/error.hpp"
#include "ltp/suites.hpp"

using namespace ltp;

namespace {

std::optional<Code> code_of(const std::string& text) {
  try {
    RunConfig::parse(text).validate();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("crc32 check value") {
  CHECK(crc32_of("123456789") == 0xcbf43926u);
  CHECK(crc32_hex("123456789") == "cbf43926");
  CHECK(crc32_hex("") == "00000000");
}

TEST_CASE("config round trip") {
  RunConfig c = RunConfig::parse(R"({"p": 5, "prec": 4, "seed": 11, "samples": {"witt": 7}, "suites": ["witt"]})");
  CHECK(c.ring.p == 5);
  CHECK(c.prec == 4);
  CHECK(c.seed == 11);
  CHECK(c.samples_witt == 7);
  CHECK(c.samples_delta == 200);
  CHECK(c.suites == std::vector<std::string>{"witt"});
  RunConfig d = RunConfig::from_json(c.to_json());
  CHECK(d.to_json() == c.to_json());
  CHECK(RunConfig{}.to_json() == RunConfig::parse("{}").to_json());
}

TEST_CASE("config rejects bad input") {
  CHECK_FALSE(code_of("{}").has_value());
  CHECK(code_of(R"({"p": 3,,})") == Code::BadConfig);
  CHECK(code_of(R"({"nope": 1})") == Code::BadConfig);
  CHECK(code_of(R"({"samples": {"nope": 1}})") == Code::BadConfig);
  CHECK(code_of(R"({"truncations": {"nope": 1}})") == Code::BadConfig);
  CHECK(code_of(R"({"p": "three"})") == Code::BadConfig);
  CHECK(code_of(R"({"p": 6})") == Code::BadConfig);
  CHECK(code_of(R"({"lt": "formal"})") == Code::BadConfig);
  CHECK(code_of(R"({"tower_n": 3, "truncations": {"tower_depth": 2}})") == Code::BadConfig);
  CHECK(code_of(R"({"suites": ["nope"]})") == Code::BadConfig);
}

TEST_CASE("unknown key error names its line") {
  try {
    RunConfig::parse("{\n  \"p\": 3,\n  \"bogus\": 1\n}");
    FAIL("expected BadConfig");
  } catch (const Error& e) {
    CHECK(e.code() == Code::BadConfig);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("report body is deterministic and seed dependent") {
  RunConfig c = RunConfig::parse(R"({"samples": {"witt": 4}, "truncations": {"witt_len": 2}, "suites": ["witt"]})");
  auto a = report_body(c, run_suites(c)).dump();
  auto b = report_body(c, run_suites(c)).dump();
  CHECK(a == b);
  c.seed = 2;
  CHECK(report_body(c, run_suites(c)).dump() != a);
  auto full = full_report(c, run_suites(c));
  CHECK(full.contains("timings"));
  CHECK_FALSE(full["body"].contains("timings"));
  CHECK(full["body"]["schema"] == kReportSchema);
  CHECK(full["body"]["summary"]["fail"] == 0);
  CHECK_FALSE(full["body"].contains("reproducer"));
}

TEST_CASE("failing run carries a reproducer") {
  RunConfig c = RunConfig::parse(R"({"stabilize_steps": 1, "samples": {"herr": 2}, "suites": ["phimod"]})");
  auto body = report_body(c, run_suites(c));
  CHECK(body["summary"]["fail"].get<int>() > 0);
  REQUIRE(body.contains("reproducer"));
  CHECK(body["reproducer"]["seed"] == c.seed);
}
