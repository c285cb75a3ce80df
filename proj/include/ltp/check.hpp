#pragma once

#include <string>
#include <vector>

namespace ltp {

// Outcome of one verified identity. The certificate is a deterministic text
// rendering of the witnesses; reports store its CRC32.
struct CheckResult {
  std::string id;
  std::string anchor;
  bool pass = false;
  std::string certificate;
  std::string detail;
};

inline bool all_pass(const std::vector<CheckResult>& rs) {
  for (const auto& r : rs)
    if (!r.pass) return false;
  return true;
}

}  // namespace ltp
