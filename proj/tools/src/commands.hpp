#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tower2::cli {

/// Exit codes: 0 success, 1 verification mismatch, 2 invalid input or environment.
enum ExitCode : int { exit_ok = 0, exit_mismatch = 1, exit_invalid = 2 };

/// Runs the command line (args[0] is the program name) against the given streams.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tower2::cli
