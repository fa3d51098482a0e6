#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace betafull {

enum class ErrorKind {
  Parse,
  NotParryAdmissible,
  BetaOutOfRange,
  ContextMismatch,
  OutOfRange,
  LetterOutOfRange,
  NotAdmissible,
  DivisionByZero,
  NotSofic,
  NotSFT,
  InvalidTable,
  OutOfDomain,
  StepLimit,
  InternalInvariantViolation,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::NotParryAdmissible: return "NotParryAdmissible";
    case ErrorKind::BetaOutOfRange: return "BetaOutOfRange";
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::LetterOutOfRange: return "LetterOutOfRange";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotSofic: return "NotSofic";
    case ErrorKind::NotSFT: return "NotSFT";
    case ErrorKind::InvalidTable: return "InvalidTable";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::StepLimit: return "StepLimit";
    case ErrorKind::InternalInvariantViolation: return "InternalInvariantViolation";
  }
  return "Unknown";
}

/// Every domain failure in the library is reported as an `Error` carrying a
/// machine-readable kind; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace betafull
