#pragma once

#include <stdexcept>
#include <string>

namespace equicycle {

enum class ErrorCode {
  InvalidArgument,
  Inadmissible,
  DegenerateDenominator,
  UnresolvedClassification,
  DegenerateInfinity,
  OnCriticalSet,
  AtInfinity,
  PreconditionNotMet,
  BlowUp,
  OpenCurve,
};

const char* to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace equicycle
