#pragma once

#include <stdexcept>
#include <string>

namespace ltp {

enum class Code {
  Indivisible,
  InsufficientPrecision,
  Inexact,
  NotUnit,
  ConstantTerm,
  IntegrityFailure,
  NotEtale,
  NonMultiple,
  DepthExceedsTower,
  InsufficientDepth,
  WitnessFailure,
  BadFrobeniusSeries,
  Nonconvergence,
  UndecidableAtPrecision,
  RingMismatch,
  NoFrobenius,
  BadConfig,
  InvalidArgument,
};

const char* code_name(Code c);

// Every library failure carries a stable code; what() is "<CODE>: detail".
class Error : public std::runtime_error {
 public:
  Error(Code c, const std::string& detail)
      : std::runtime_error(std::string(code_name(c)) + ": " + detail), code_(c) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

[[noreturn]] inline void fail(Code c, const std::string& detail) { throw Error(c, detail); }

inline void require(bool ok, Code c, const std::string& detail) {
  if (!ok) fail(c, detail);
}

}  // namespace ltp
