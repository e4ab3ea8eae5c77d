#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace boroczky {

enum class ErrorCode {
  DescriptorMismatch,
  DivisionByZero,
  UnsupportedField,
  InvalidDescriptor,
  ParseError,
  CoincidentPoints,
  CoincidentLines,
  DuplicateLines,
  NotDoublyPerspective,
  RingMismatch,
  ZeroDivisor,
  ZeroInput,
  VariableAbsent,
  ResourceExceeded,
  InternalMismatch,
  GenericParameter,
  DerivationMismatch,
  CoefficientVanishes,
  ForbiddenA,
  ParameterInvalid,
  MapUndefined,
  PointNotOnCurve,
  DegreeBoundTooSmall,
  EmptyWindow,
  ChartDegenerate,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DescriptorMismatch: return "DescriptorMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::UnsupportedField: return "UnsupportedField";
    case ErrorCode::InvalidDescriptor: return "InvalidDescriptor";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::CoincidentLines: return "CoincidentLines";
    case ErrorCode::DuplicateLines: return "DuplicateLines";
    case ErrorCode::NotDoublyPerspective: return "NotDoublyPerspective";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::ZeroDivisor: return "ZeroDivisor";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::VariableAbsent: return "VariableAbsent";
    case ErrorCode::ResourceExceeded: return "ResourceExceeded";
    case ErrorCode::InternalMismatch: return "InternalMismatch";
    case ErrorCode::GenericParameter: return "GenericParameter";
    case ErrorCode::DerivationMismatch: return "DerivationMismatch";
    case ErrorCode::CoefficientVanishes: return "CoefficientVanishes";
    case ErrorCode::ForbiddenA: return "ForbiddenA";
    case ErrorCode::ParameterInvalid: return "ParameterInvalid";
    case ErrorCode::MapUndefined: return "MapUndefined";
    case ErrorCode::PointNotOnCurve: return "PointNotOnCurve";
    case ErrorCode::DegreeBoundTooSmall: return "DegreeBoundTooSmall";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::ChartDegenerate: return "ChartDegenerate";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace boroczky
