#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pucci {

enum class ErrorCode {
  InvalidParameters,
  InvalidMatrix,
  DegenerateGradient,
  OutOfDomain,
  InvalidNeumannData,
  SignBranchFailure,
  BracketFailure,
  NoZeroCrossing,
  InvalidShape,
  IterationLimit,
  PositivityLoss,
  ReflectionOutOfDomain,
  CoefficientBlowup,
  HypothesisViolation,
  Unsupported,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type for the library. `history` carries solver residuals
/// (IterationLimit) or other numeric diagnostics when the failure has them.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::vector<double> history = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        history_(std::move(history)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<double>& history() const noexcept { return history_; }

 private:
  ErrorCode code_;
  std::vector<double> history_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::DegenerateGradient: return "DegenerateGradient";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::InvalidNeumannData: return "InvalidNeumannData";
    case ErrorCode::SignBranchFailure: return "SignBranchFailure";
    case ErrorCode::BracketFailure: return "BracketFailure";
    case ErrorCode::NoZeroCrossing: return "NoZeroCrossing";
    case ErrorCode::InvalidShape: return "InvalidShape";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::PositivityLoss: return "PositivityLoss";
    case ErrorCode::ReflectionOutOfDomain: return "ReflectionOutOfDomain";
    case ErrorCode::CoefficientBlowup: return "CoefficientBlowup";
    case ErrorCode::HypothesisViolation: return "HypothesisViolation";
    case ErrorCode::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

}  // namespace pucci
