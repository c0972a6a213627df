#pragma once

#include <stdexcept>
#include <string>

namespace mobius {

enum class ErrorCode {
  InvalidMatrix,
  AmbiguousClass,
  DegenerateArc,
  EmptyInput,
  BudgetExceeded,
  PreconditionFailed,
  CommonFixedPoint,
  DegenerateInput,
  ParseError,
  UnknownScenario,
};

const char* to_string(ErrorCode code);

/// Every library failure is reported through this type; `code()` names the
/// failing condition so callers (notably the CLI) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mobius
