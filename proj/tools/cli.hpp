#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace multitime::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kParseError = 2,
    kIncompatible = 3,
    kNumericFailure = 4,
    kNonConvergence = 5,
};

/// Runs the command line `args` (without the program name). Data goes to
/// `out` when the output path is "-"; reports and diagnostics go to `err`
/// in that case and to `out` otherwise.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace multitime::cli
