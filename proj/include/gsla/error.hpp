#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gsla {

enum class ErrorCode {
  DivisionByZero,
  NoSuchRoot,
  AmbientMismatch,
  NotCommutative,
  NonSplit,
  EmptySubspace,
  SearchCapExceeded,
  GradingMismatch,
  FieldMismatch,
  DecompositionFailure,
  NotAnIdeal,
  NotProper,
  AlreadyGraded,
  NotGradedSimple,
  VerificationFailure,
  DimensionMismatch,
  NotHomomorphism,
  KernelMismatch,
  WitnessInvalid,
  NotSemisimple,
  NoProjectionFound,
  BadCharacteristic,
  ParseError,
  InvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto a certificate and an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gsla
