#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rheokit::cli {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kSolverError = 3,
  kEquivalenceBreach = 4,
};

/// Runs `rheokit <args...>` (program name excluded). CSV goes to `out` unless
/// --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rheokit::cli
