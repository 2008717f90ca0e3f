#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace emtime {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_config = 2,
    exit_domain = 3,
};

/// Runs the `emtime` command line. `args` excludes the program name. CSV goes
/// to `out` unless a path is given; diagnostics go to `err`, with ANSI colors
/// when `color` is set.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool color);

} // namespace emtime
