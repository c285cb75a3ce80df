#include "ltp/error.hpp"

namespace ltp {

const char* code_name(Code c) {
  switch (c) {
    case Code::Indivisible: return "INDIVISIBLE";
    case Code::InsufficientPrecision: return "INSUFFICIENT_PRECISION";
    case Code::Inexact: return "INEXACT";
    case Code::NotUnit: return "NOT_UNIT";
    case Code::ConstantTerm: return "CONSTANT_TERM";
    case Code::IntegrityFailure: return "INTEGRITY_FAILURE";
    case Code::NotEtale: return "NOT_ETALE";
    case Code::NonMultiple: return "NON_MULTIPLE";
    case Code::DepthExceedsTower: return "DEPTH_EXCEEDS_TOWER";
    case Code::InsufficientDepth: return "INSUFFICIENT_DEPTH";
    case Code::WitnessFailure: return "WITNESS_FAILURE";
    case Code::BadFrobeniusSeries: return "BAD_FROBENIUS_SERIES";
    case Code::Nonconvergence: return "NONCONVERGENCE";
    case Code::UndecidableAtPrecision: return "UNDECIDABLE_AT_PRECISION";
    case Code::RingMismatch: return "RING_MISMATCH";
    case Code::NoFrobenius: return "NO_FROBENIUS";
    case Code::BadConfig: return "BAD_CONFIG";
    case Code::InvalidArgument: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

}  // namespace ltp
