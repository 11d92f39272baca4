#pragma once

#include <stdexcept>
#include <string>

namespace negtype {

enum class ErrKind {
  AsymmetricInput,
  NonzeroDiagonal,
  NonpositiveOffDiagonal,
  TooSmall,
  NegativeExponent,
  DisconnectedGraph,
  BadParams,
  NotMeanZero,
  NotPSD,
  NotInCone,
  ZeroDenominator,
  CoincidentImages,
  SolverFailure,
  BadExponent,
  TooLarge,
  ParseError,
  FileNotFound,
};

class Error : public std::runtime_error {
public:
  Error(ErrKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrKind kind() const { return kind_; }

private:
  ErrKind kind_;
};

inline const char* err_kind_name(ErrKind k) {
  switch (k) {
    case ErrKind::AsymmetricInput: return "AsymmetricInput";
    case ErrKind::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrKind::NonpositiveOffDiagonal: return "NonpositiveOffDiagonal";
    case ErrKind::TooSmall: return "TooSmall";
    case ErrKind::NegativeExponent: return "NegativeExponent";
    case ErrKind::DisconnectedGraph: return "DisconnectedGraph";
    case ErrKind::BadParams: return "BadParams";
    case ErrKind::NotMeanZero: return "NotMeanZero";
    case ErrKind::NotPSD: return "NotPSD";
    case ErrKind::NotInCone: return "NotInCone";
    case ErrKind::ZeroDenominator: return "ZeroDenominator";
    case ErrKind::CoincidentImages: return "CoincidentImages";
    case ErrKind::SolverFailure: return "SolverFailure";
    case ErrKind::BadExponent: return "BadExponent";
    case ErrKind::TooLarge: return "TooLarge";
    case ErrKind::ParseError: return "ParseError";
    case ErrKind::FileNotFound: return "FileNotFound";
  }
  return "Unknown";
}

}  // namespace negtype
