#include "probalab/error.hpp"

namespace probalab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DomainError:
      return "DomainError";
    case ErrorKind::NonNegativityViolation:
      return "NonNegativityViolation";
    case ErrorKind::DivergentTail:
      return "DivergentTail";
    case ErrorKind::TruncationWarning:
      return "TruncationWarning";
    case ErrorKind::InvalidOrder:
      return "InvalidOrder";
    case ErrorKind::UnsupportedComponent:
      return "UnsupportedComponent";
    case ErrorKind::UndefinedMoment:
      return "UndefinedMoment";
    case ErrorKind::QuadratureFailure:
      return "QuadratureFailure";
    case ErrorKind::NotAbsolutelyContinuous:
      return "NotAbsolutelyContinuous";
    case ErrorKind::GridTooCoarse:
      return "GridTooCoarse";
    case ErrorKind::ConvergenceFailure:
      return "ConvergenceFailure";
    case ErrorKind::SingularCovariance:
      return "SingularCovariance";
    case ErrorKind::ShapeMismatch:
      return "ShapeMismatch";
    case ErrorKind::NonZeroCrossCovariance:
      return "NonZeroCrossCovariance";
    case ErrorKind::NegativeSupport:
      return "NegativeSupport";
    case ErrorKind::ZeroDenominator:
      return "ZeroDenominator";
    case ErrorKind::ConjugateMismatch:
      return "ConjugateMismatch";
    case ErrorKind::ConvexityViolation:
      return "ConvexityViolation";
    case ErrorKind::TooManyEvents:
      return "TooManyEvents";
    case ErrorKind::UnboundedForLowerBound:
      return "UnboundedForLowerBound";
    case ErrorKind::EmptyCell:
      return "EmptyCell";
    case ErrorKind::NotARefinement:
      return "NotARefinement";
    case ErrorKind::IncoherentFamily:
      return "IncoherentFamily";
    case ErrorKind::NotPositiveSemidefinite:
      return "NotPositiveSemidefinite";
    case ErrorKind::SaturationError:
      return "SaturationError";
    case ErrorKind::UnknownLaw:
      return "UnknownLaw";
    case ErrorKind::UsageError:
      return "UsageError";
  }
  return "Unknown";
}

}  // namespace probalab
