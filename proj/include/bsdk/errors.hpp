#pragma once

#include <stdexcept>
#include <string>

namespace bsdk {

enum class ErrorKind {
  NotHermitian,
  SingularMatrix,
  RankDeficient,
  ShapeMismatch,
  StructureViolation,
  OutsideClosure,
  OddNullity,
  NotCanonical,
  SingularDenominator,
  ConstraintViolation,
  EmptyEnsemble,
  MixedComponents,
  DivergenceDetected,
  TooFarToRetract,
  DomainViolation,
};

const char* to_string(ErrorKind kind);

/// Library error carrying a machine-checkable kind plus a human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace bsdk
