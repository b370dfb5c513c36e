#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace singscat {

/// Exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitUndefined = 3,
    kExitNumerical = 4,
};

/// Runs the command line (arguments after the program name). Results and error
/// documents go to `out` unless --out names a file; diagnostics, per-row sweep
/// errors and the mollify summary go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace singscat
