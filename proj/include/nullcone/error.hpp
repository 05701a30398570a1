#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nullcone {

enum class ErrorCode {
  NotPrime,
  ReducibleModulus,
  DegreeMismatch,
  DivisionByZero,
  ContextMismatch,
  RationalContext,
  DimensionMismatch,
  ParseError,
  CapExceeded,
  NotInvertible,
  GroupMismatch,
  NotPermutationAction,
  CharDividesOrder,
  TooManyPoints,
  NotInvariantGenerator,
  CharDividesDegree,
  NotFixedPoint,
  VanishesAtPoint,
  NotInvariantCandidate,
  WeightCollision,
  SingularSpecialization,
  UnknownSuite,
  BadParameter,
};

std::string_view to_string(ErrorCode code);

/// All failures raised by the library carry one of the codes above; the
/// message is free-form context for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void raise(ErrorCode code, const std::string& what);

}  // namespace nullcone
