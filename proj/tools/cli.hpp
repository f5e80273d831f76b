#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qlambert::cli {

enum ExitCode : int {
  kSuccess = 0,
  kDomainOrCheckFailure = 1,
  kParseOrConfigFailure = 2,
};

/// Runs the command line `args` (args[0] is the program name) and returns the
/// process exit code. Results go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qlambert::cli
