#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jip {

enum class ErrorKind {
  NonUnitLeadingCoefficient,
  ExponentNotDivisible,
  ResidueObstruction,
  TruncationTooShallow,
  NotCoprime,
  InvalidLambdaIndex,
  SymbolicLambda,
  RootFindingFailure,
  NewtonStall,
  UnsolvableCorrection,
  OrderExceedsSupport,
  ZetaLeakage,
  DegenerateDeterminant,
  DegreeCollapse,
  NullSpaceDimensionError,
  BranchCollision,
  NonSymmetricTau,
  OnThetaDivisor,
  PathThroughBranchPoint,
  SheetLoss,
  UnsupportedBranchPoints,
  SpecialDivisor,
  InvalidInput,
  ParseError,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonUnitLeadingCoefficient: return "NonUnitLeadingCoefficient";
    case ErrorKind::ExponentNotDivisible: return "ExponentNotDivisible";
    case ErrorKind::ResidueObstruction: return "ResidueObstruction";
    case ErrorKind::TruncationTooShallow: return "TruncationTooShallow";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::InvalidLambdaIndex: return "InvalidLambdaIndex";
    case ErrorKind::SymbolicLambda: return "SymbolicLambda";
    case ErrorKind::RootFindingFailure: return "RootFindingFailure";
    case ErrorKind::NewtonStall: return "NewtonStall";
    case ErrorKind::UnsolvableCorrection: return "UnsolvableCorrection";
    case ErrorKind::OrderExceedsSupport: return "OrderExceedsSupport";
    case ErrorKind::ZetaLeakage: return "ZetaLeakage";
    case ErrorKind::DegenerateDeterminant: return "DegenerateDeterminant";
    case ErrorKind::DegreeCollapse: return "DegreeCollapse";
    case ErrorKind::NullSpaceDimensionError: return "NullSpaceDimensionError";
    case ErrorKind::BranchCollision: return "BranchCollision";
    case ErrorKind::NonSymmetricTau: return "NonSymmetricTau";
    case ErrorKind::OnThetaDivisor: return "OnThetaDivisor";
    case ErrorKind::PathThroughBranchPoint: return "PathThroughBranchPoint";
    case ErrorKind::SheetLoss: return "SheetLoss";
    case ErrorKind::UnsupportedBranchPoints: return "UnsupportedBranchPoints";
    case ErrorKind::SpecialDivisor: return "SpecialDivisor";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace jip
