#pragma once

#include <stdexcept>
#include <string>

namespace qruler {

enum class ErrorCode {
  InvalidArgument,
  GridTooNarrow,
  GridMismatch,
  NonPositiveSigma,
  XiOutOfDisc,
  TruncationTooShort,
  NormalizationFailure,
  DegenerateDistribution,
  StepTooLarge,
  ContinuumApproxViolated,
  DegenerateSqueezing,
  NonPositiveBudget,
  ConfigError,
  IoError,
};

const char* to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so the
/// command-line front end can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qruler
