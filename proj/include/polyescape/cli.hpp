#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polyescape {

/// Exit codes of the command-line driver.
enum ExitCode : int { kExitOk = 0, kExitRejected = 1, kExitBadInput = 2, kExitResourceLimit = 3 };

/// Runs the `polyescape` command line. args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polyescape
