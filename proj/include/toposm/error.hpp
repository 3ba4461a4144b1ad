#pragma once

#include <stdexcept>
#include <string>

namespace toposm {

// Every failure mode raised by the library. The kind is part of the API:
// callers (and tests) dispatch on it, the message is for humans.
enum class ErrorKind {
  // groupoid / action validation
  DanglingEndpoint,
  MissingInverse,
  NonAssociative,
  MissingIdentity,
  BadComposition,
  UnknownElement,
  GroupoidMismatch,
  CarrierMismatch,
  // valuations and measures
  MissingOrbitWeight,
  NegativeWeight,
  NotInvariant,
  NotWellSupported,
  NotOrbitConstant,
  NotEpi,
  NoCover,
  DescentFailure,
  NotPositive,
  // operator algebra
  NotEquivariant,
  NotInAlgebra,
  NotComponentConstant,
  NotNormalized,
  DomainError,
  // harness
  ParseError,
  ValidationError,
  UsageError,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace toposm
