#pragma once

#include <ostream>

namespace cantorforge::cli {

/// Exit codes: 0 ok, 1 invariant failure, 2 spec or usage error,
/// 3 node budget exceeded, 4 depth too shallow.
enum ExitCode : int {
  kOk = 0,
  kInvariantFailure = 1,
  kSpecError = 2,
  kBudgetExceeded = 3,
  kDepthTooShallow = 4,
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cantorforge::cli
