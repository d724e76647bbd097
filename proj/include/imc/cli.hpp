#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace imc::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInvalidInput = 2,
    kNumericalFailure = 3,
    kCapExceeded = 4,
};

/// Runs the tool with the given arguments (argv[0] excluded). Documents go to
/// `out` unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace imc::cli
