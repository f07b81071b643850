#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace modent::cli {

enum ExitCode : int {
    kOk = 0,
    kSolverFailure = 1,
    kBadArguments = 2,
    kOracleMismatch = 3,
};

/// Runs one command. `args` excludes the program name. Results go to `out`
/// unless an output file is selected; warnings and error lines go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace modent::cli
