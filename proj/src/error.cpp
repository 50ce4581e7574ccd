#include "gaussmod/error.hpp"

namespace gaussmod {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::NotStrictlyPositive: return "NotStrictlyPositive";
    case ErrorKind::DominationFailure: return "DominationFailure";
    case ErrorKind::NotStandard: return "NotStandard";
    case ErrorKind::NotFactorial: return "NotFactorial";
    case ErrorKind::NonPositiveMass: return "NonPositiveMass";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace gaussmod
