#pragma once

#include <stdexcept>
#include <string>

namespace cangeo {

enum class ErrorCode {
  OutOfRange,
  InvalidSurface,
  InvalidPoint,
  SamePoint,
  SingleSegment,
  CuspParameter,
  ParamOutOfBox,
  FaceMismatch,
  EmptyBox,
  NoSolution,
  HypothesisViolated,
  PartnerOffSurface,
  NoPositiveRoot,
  Disconnected,
  ParseError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::InvalidSurface: return "InvalidSurface";
    case ErrorCode::InvalidPoint: return "InvalidPoint";
    case ErrorCode::SamePoint: return "SamePoint";
    case ErrorCode::SingleSegment: return "SingleSegment";
    case ErrorCode::CuspParameter: return "CuspParameter";
    case ErrorCode::ParamOutOfBox: return "ParamOutOfBox";
    case ErrorCode::FaceMismatch: return "FaceMismatch";
    case ErrorCode::EmptyBox: return "EmptyBox";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::HypothesisViolated: return "HypothesisViolated";
    case ErrorCode::PartnerOffSurface: return "PartnerOffSurface";
    case ErrorCode::NoPositiveRoot: return "NoPositiveRoot";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Exception carrying a machine-readable code; every failure in the library
/// is reported through this type.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace cangeo
