#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace horizon {

enum class ErrorKind {
  NotHermitian,
  NotSkewHermitian,
  BranchAmbiguity,
  DimensionMismatch,
  NotSubalgebra,
  EmptySubspace,
  BadDims,
  ShapeMismatch,
  NotInvolutive,
  NotAutomorphism,
  ParamLengthMismatch,
  SymmetryLeakage,
  UnknownSpace,
  QubitRange,
  NonUnitary,
  OddQubits,
  TooFewQubits,
  DegenerateSpectrum,
  ParseError,
  InvalidArgument,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotSkewHermitian: return "NotSkewHermitian";
    case ErrorKind::BranchAmbiguity: return "BranchAmbiguity";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotSubalgebra: return "NotSubalgebra";
    case ErrorKind::EmptySubspace: return "EmptySubspace";
    case ErrorKind::BadDims: return "BadDims";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotInvolutive: return "NotInvolutive";
    case ErrorKind::NotAutomorphism: return "NotAutomorphism";
    case ErrorKind::ParamLengthMismatch: return "ParamLengthMismatch";
    case ErrorKind::SymmetryLeakage: return "SymmetryLeakage";
    case ErrorKind::UnknownSpace: return "UnknownSpace";
    case ErrorKind::QubitRange: return "QubitRange";
    case ErrorKind::NonUnitary: return "NonUnitary";
    case ErrorKind::OddQubits: return "OddQubits";
    case ErrorKind::TooFewQubits: return "TooFewQubits";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace horizon
