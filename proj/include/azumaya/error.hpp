#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace azumaya {

enum class ErrorCode {
  NonPrimeModulus,
  ReduciblePolynomial,
  EmptyProduct,
  InvalidDescriptor,
  NotAUnit,
  RingMismatch,
  InvalidIdeal,
  UnsupportedRing,
  NoSolution,
  IllFormedMap,
  DimensionMismatch,
  AssociativityViolated,
  UnitViolated,
  BaseMismatch,
  InvalidBaseHom,
  ZeroRing,
  NotInvertible,
  ComposabilityMismatch,
  VerificationFailed,
  PreconditionUnmet,
  ArityMismatch,
  AlgebraMismatch,
  BudgetExceeded,
  ParseError,
  ValidationError,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace azumaya
