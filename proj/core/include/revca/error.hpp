#pragma once

#include <stdexcept>
#include <string>

namespace revca {

enum class ErrorCode {
  kInvalidConfiguration,
  kInvalidTransitionEffect,
  kUnknownToken,
  kNegativeCounter,
  kNegativeResult,
  kExtendedDelta,
  kNotQuasiRealtime,
  kAlphabetMismatch,
  kMoveDisagreement,
  kUnknownLetter,
  kLengthNotDivisible,
  kUnknownDigit,
  kNotAccepting,
  kSyntax,
  kValidation,
  kInvalidArgument,
};

const char* to_string(ErrorCode code);

// All library failures are reported through this exception type; the code
// lets callers (and the CLI exit-code mapping) branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace revca
