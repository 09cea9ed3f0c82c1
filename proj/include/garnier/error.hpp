#pragma once

#include <stdexcept>
#include <string>

namespace garnier {

enum class ErrorKind {
  InvalidArgument,
  NumericOverflow,
  ZeroConstantTerm,
  EvalAtPole,
  GammaPole,
  CutViolation,
  OutOfRegion,
  NonGenericParams,
  SingularTime,
  DegenerateLambda,
  CollidingSingularities,
  UnsupportedLimit,
  NotASingularity,
  EvalAtSingularity,
  StepFailure,
  PathTooClose,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so that
// callers (the CLI in particular) can map them onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace garnier
