#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ellsurf {

enum class ErrorKind {
  NotPrime,
  NotIrreducible,
  CharTooSmall,
  DivisionByZero,
  InconsistentPowerSums,
  NonIntegralCoefficients,
  NoConsistentSign,
  NotMinimalizable,
  EulerNotTwelveDivisible,
  UnsupportedModel,
  GoodFiber,
  PlaceBudgetExceeded,
  InconsistentCounts,
  InsufficientCounts,
  TruncationInsufficient,
  NonPolynomialTail,
  ClosedFormMismatch,
  NonPolynomial,
  DegeneratePairing,
  InfiniteHomology,
  NotExact,
  NotIsotropic,
  IndexInfinite,
  NotOrthogonal,
  NontrivialMW,
  InvalidArgument,
  ParseError,
  UnknownKey,
  BadField,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace ellsurf
