#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace apfgrid {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitViolation = 1,
    kExitTimeout = 2,
    kExitInvalid = 3,
};

/// Runs the tool; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace apfgrid
