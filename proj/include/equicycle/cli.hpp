#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "equicycle/error.hpp"

namespace equicycle::cli {

enum ExitCode : int {
  kOk = 0,
  kBadInput = 2,
  kNumericalFailure = 3,
  kIoFailure = 4,
};

/// kBadInput for InvalidArgument and Inadmissible, kNumericalFailure otherwise.
int exit_code_for(ErrorCode code) noexcept;

/// Runs the command line `args` (without the program name).  Normal output
/// goes to `out` unless --output names a file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace equicycle::cli
