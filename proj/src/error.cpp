#include "nullcone/error.hpp"

namespace nullcone {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ContextMismatch: return "ContextMismatch";
    case ErrorCode::RationalContext: return "RationalContext";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::NotPermutationAction: return "NotPermutationAction";
    case ErrorCode::CharDividesOrder: return "CharDividesOrder";
    case ErrorCode::TooManyPoints: return "TooManyPoints";
    case ErrorCode::NotInvariantGenerator: return "NotInvariantGenerator";
    case ErrorCode::CharDividesDegree: return "CharDividesDegree";
    case ErrorCode::NotFixedPoint: return "NotFixedPoint";
    case ErrorCode::VanishesAtPoint: return "VanishesAtPoint";
    case ErrorCode::NotInvariantCandidate: return "NotInvariantCandidate";
    case ErrorCode::WeightCollision: return "WeightCollision";
    case ErrorCode::SingularSpecialization: return "SingularSpecialization";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::BadParameter: return "BadParameter";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void raise(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace nullcone
