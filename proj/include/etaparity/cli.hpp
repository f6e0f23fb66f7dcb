#pragma once

#include <ostream>

namespace etaparity {

/// Exit codes shared by every command.
enum ExitCode : int { kAllPass = 0, kMismatch = 1, kUsage = 2 };

/// Runs the command line `argv[1..]`; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace etaparity
