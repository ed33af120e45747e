#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace expander::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInputData = 2,
  kRefused = 3,
  kInternal = 4,
};

/// Runs one command line (without the program name). Primary output goes to
/// `out` when no output file is named; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace expander::cli
