#pragma once

#include <string>
#include <vector>

namespace toposcope::cli {

/// Exit codes of the command-line front end.
enum ExitCode : int { kOk = 0, kInputError = 2, kComputeError = 3, kBadArguments = 4 };

/// Runs the CLI on argv-style arguments (args[0] is the program name).
int run(const std::vector<std::string>& args);

}  // namespace toposcope::cli
