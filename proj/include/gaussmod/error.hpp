#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gaussmod {

enum class ErrorKind {
  NonSquare,
  NonHermitian,
  NonFinite,
  DimensionMismatch,
  DomainViolation,
  NotPSD,
  NotPositive,
  NotStrictlyPositive,
  DominationFailure,
  NotStandard,
  NotFactorial,
  NonPositiveMass,
  InvalidArgument,
  Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure in the library is reported through this one type; kind()
// lets callers branch on the failed precondition.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gaussmod
