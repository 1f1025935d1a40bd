#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bent {

enum class ErrorKind {
  NotPrime,
  EvenCharacteristic,
  Reducible,
  DivisionByZero,
  ZeroBeta,
  MixedP,
  Overflow,
  AmbiguousMatch,
  ShapeMismatch,
  EmptyQuadraticPart,
  DegenerateExponents,
  NotSymmetric,
  DegenerateForm,
  RootOfUnityNotFound,
  KernelMismatch,
  NotNearBent,
  InvalidWitness,
  ParseError,
  ValidationError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so that callers (the
/// CLI in particular) can map it to an exit code without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bent
