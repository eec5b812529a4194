#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace igusa {

enum class ErrorKind {
  Syntax,
  UniformizerInCharZero,
  InsufficientValuation,
  BudgetExceeded,
  ZeroPolynomial,
  NonUnitContent,
  NotApplicable,
  DepthExceeded,
  NotSemiQuasiHomogeneous,
  InvalidHint,
  StabilizationNotReached,
  InvalidParameters,
  InvariantViolation,
};

/// Base class for every error raised by the library. The kind drives the
/// CLI exit-code contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error(ErrorKind::Syntax,
              "syntax error at position " + std::to_string(position) + ": " +
                  message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

#define IGUSA_DEFINE_ERROR(Name)                       \
  class Name : public Error {                          \
   public:                                             \
    explicit Name(const std::string& what)             \
        : Error(ErrorKind::Name, #Name ": " + what) {} \
  };

IGUSA_DEFINE_ERROR(UniformizerInCharZero)
IGUSA_DEFINE_ERROR(InsufficientValuation)
IGUSA_DEFINE_ERROR(BudgetExceeded)
IGUSA_DEFINE_ERROR(ZeroPolynomial)
IGUSA_DEFINE_ERROR(NonUnitContent)
IGUSA_DEFINE_ERROR(NotApplicable)
IGUSA_DEFINE_ERROR(DepthExceeded)
IGUSA_DEFINE_ERROR(NotSemiQuasiHomogeneous)
IGUSA_DEFINE_ERROR(InvalidHint)
IGUSA_DEFINE_ERROR(StabilizationNotReached)
IGUSA_DEFINE_ERROR(InvalidParameters)
IGUSA_DEFINE_ERROR(InvariantViolation)

#undef IGUSA_DEFINE_ERROR

/// Process exit code for an error kind: 2 parse, 3 not semiquasihomogeneous,
/// 4 depth cap, 5 stabilization cap, 6 budget, 1 anything else.
inline int exit_code(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Syntax:
    case ErrorKind::UniformizerInCharZero:
      return 2;
    case ErrorKind::NotSemiQuasiHomogeneous:
    case ErrorKind::InvalidHint:
      return 3;
    case ErrorKind::DepthExceeded:
      return 4;
    case ErrorKind::StabilizationNotReached:
      return 5;
    case ErrorKind::BudgetExceeded:
      return 6;
    default:
      return 1;
  }
}

}  // namespace igusa
