#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace probalab {

/// Failure categories raised by the library. Each maps to a named error of
/// the operation contracts; the CLI turns them into exit code 2 or 1.
enum class ErrorKind {
  DomainError,
  NonNegativityViolation,
  DivergentTail,
  TruncationWarning,
  InvalidOrder,
  UnsupportedComponent,
  UndefinedMoment,
  QuadratureFailure,
  NotAbsolutelyContinuous,
  GridTooCoarse,
  ConvergenceFailure,
  SingularCovariance,
  ShapeMismatch,
  NonZeroCrossCovariance,
  NegativeSupport,
  ZeroDenominator,
  ConjugateMismatch,
  ConvexityViolation,
  TooManyEvents,
  UnboundedForLowerBound,
  EmptyCell,
  NotARefinement,
  IncoherentFamily,
  NotPositiveSemidefinite,
  SaturationError,
  UnknownLaw,
  UsageError,
};

std::string_view to_string(ErrorKind kind);

class ProbaError : public std::runtime_error {
 public:
  ProbaError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw ProbaError(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace probalab
