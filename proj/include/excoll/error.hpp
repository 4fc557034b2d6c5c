#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace excoll {

enum class Errc {
  DivisionByZero,
  ConductorOverflow,
  ParseError,
  NotInvertible,
  OrderCapExceeded,
  InvalidParameter,
  GroupMismatch,
  NegativeDegree,
  BasisMismatch,
  WindowViolation,
  NonConcentratedHom,
  IrrepVerificationFailed,
  NotADivisor,
  OrthogonalityFailure,
  NotStrong,
  ValidationError,
  InvalidComplex,
};

std::string_view errc_name(Errc code);

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace excoll
