#include "qruler/error.hpp"

namespace qruler {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::GridTooNarrow: return "GridTooNarrow";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NonPositiveSigma: return "NonPositiveSigma";
    case ErrorCode::XiOutOfDisc: return "XiOutOfDisc";
    case ErrorCode::TruncationTooShort: return "TruncationTooShort";
    case ErrorCode::NormalizationFailure: return "NormalizationFailure";
    case ErrorCode::DegenerateDistribution: return "DegenerateDistribution";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::ContinuumApproxViolated: return "ContinuumApproxViolated";
    case ErrorCode::DegenerateSqueezing: return "DegenerateSqueezing";
    case ErrorCode::NonPositiveBudget: return "NonPositiveBudget";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace qruler
