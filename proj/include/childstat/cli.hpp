#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace childstat::cli {

/// Exit codes of `run`.
enum ExitCode : int { kSuccess = 0, kUsage = 1, kDomain = 2 };

/// Runs one command line (args excludes the program name). Results go to
/// `out`; errors go to `err` as a single line `error: <CODE>: <message>`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace childstat::cli
