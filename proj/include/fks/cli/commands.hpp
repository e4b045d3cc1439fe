#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fks::cli {

enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_nonconvergence = 3, exit_internal = 4 };

/// Full command line (args[0] is the program name). Failures print one line
/// "ERR <code>: <message>" to err and return the exit code; 3 also covers a
/// verification check that ran but did not pass.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fks::cli
