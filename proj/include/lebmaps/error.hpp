#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lebmaps {

enum class ErrorCode {
  NonMonotoneInput,
  NotExpanding,
  InterpolantViolation,
  OutOfDomain,
  OutOfRange,
  NoConvergence,
  NotFullBranch,
  StepTooLarge,
  GridTooCoarse,
  OutsideValidity,
  EndpointMismatch,
  PathLeavesValidity,
  NotInSpace,
  NotClosed,
  SamplingTooCoarse,
  ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonMonotoneInput: return "NonMonotoneInput";
    case ErrorCode::NotExpanding: return "NotExpanding";
    case ErrorCode::InterpolantViolation: return "InterpolantViolation";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotFullBranch: return "NotFullBranch";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::OutsideValidity: return "OutsideValidity";
    case ErrorCode::EndpointMismatch: return "EndpointMismatch";
    case ErrorCode::PathLeavesValidity: return "PathLeavesValidity";
    case ErrorCode::NotInSpace: return "NotInSpace";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::SamplingTooCoarse: return "SamplingTooCoarse";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace lebmaps
