#pragma once

#include <ostream>

namespace iadof::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailed = 1,
  kUsage = 2,
  kIoError = 3,
  kBudgetExceeded = 4,
};

/// Entry point of the ia-dof tool. Subcommands: bounds, sweep, directions,
/// verify, simulate.
int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace iadof::cli
