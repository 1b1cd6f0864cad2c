#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bellcorr {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitCheckFailed = 1,
    kExitValidation = 2,
    kExitResourceGuard = 3,
};

/// Runs the command-line interface with `args` (excluding the program name).
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace bellcorr
