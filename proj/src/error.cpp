#include "ellsurf/error.hpp"

namespace ellsurf {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::CharTooSmall: return "CharTooSmall";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::InconsistentPowerSums: return "InconsistentPowerSums";
    case ErrorKind::NonIntegralCoefficients: return "NonIntegralCoefficients";
    case ErrorKind::NoConsistentSign: return "NoConsistentSign";
    case ErrorKind::NotMinimalizable: return "NotMinimalizable";
    case ErrorKind::EulerNotTwelveDivisible: return "EulerNotTwelveDivisible";
    case ErrorKind::UnsupportedModel: return "UnsupportedModel";
    case ErrorKind::GoodFiber: return "GoodFiber";
    case ErrorKind::PlaceBudgetExceeded: return "PlaceBudgetExceeded";
    case ErrorKind::InconsistentCounts: return "InconsistentCounts";
    case ErrorKind::InsufficientCounts: return "InsufficientCounts";
    case ErrorKind::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorKind::NonPolynomialTail: return "NonPolynomialTail";
    case ErrorKind::ClosedFormMismatch: return "ClosedFormMismatch";
    case ErrorKind::NonPolynomial: return "NonPolynomial";
    case ErrorKind::DegeneratePairing: return "DegeneratePairing";
    case ErrorKind::InfiniteHomology: return "InfiniteHomology";
    case ErrorKind::NotExact: return "NotExact";
    case ErrorKind::NotIsotropic: return "NotIsotropic";
    case ErrorKind::IndexInfinite: return "IndexInfinite";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::NontrivialMW: return "NontrivialMW";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownKey: return "UnknownKey";
    case ErrorKind::BadField: return "BadField";
  }
  return "Unknown";
}

}  // namespace ellsurf
