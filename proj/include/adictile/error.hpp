#pragma once

#include <stdexcept>
#include <string>

namespace adictile {

enum class ErrorCode {
  PrecisionMismatch,
  EvenNotInvertible,
  PrecisionExhausted,
  RankTooLow,
  WindowTooSmall,
  Inconsistent,
  Ambiguous,
  TooLarge,
  NotVerified,
  NotDecomposable,
  MarginTooSmall,
  BadInput,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace adictile
