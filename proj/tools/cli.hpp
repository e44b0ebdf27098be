#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fractal_fdm::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kInvalidArguments = 2,
    kDiverged = 3,
    kResourceCap = 4,
};

/// Runs one command line (without the program name). Data goes to `--out`
/// when given, otherwise to `out`; diagnostics go to `err`.
int run(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace fractal_fdm::cli
