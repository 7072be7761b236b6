#pragma once

// Command-line driver: figure tables, acceptance run and sweeps.

#include <ostream>
#include <string>
#include <vector>

namespace kitten {

/// Exit codes returned by run_cli.
enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitNumerical = 2, kExitUsage = 3 };

/// `args` excludes the program name. Tables go to `out` unless --out is
/// given; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kitten
