#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace xpl {

// Exit codes of the command-line front end.
enum ExitCode : int {
    kExitHolds = 0,  // also plain success
    kExitFails = 1,  // also "not separable"
    kExitUnknown = 2,
    kExitFactorization = 3,
    kExitInput = 4,
    kExitNotConverged = 5,
};

// Runs the xplcheck command line; args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xpl
