#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gaussq::cli {

/// Exit codes.
enum Exit : int { ok = 0, verify_failed = 1, usage = 2, domain = 3, io = 4, refused = 5 };

/// Runs the command line `args` (without the program name), writing results
/// to `out` and diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gaussq::cli
