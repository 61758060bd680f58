#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace symstream::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kIo = 3 };

/// Runs the command line `args` (args[0] is the program name). JSON and
/// stream output without --out goes to `out`; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out,
        std::ostream &err);

} // namespace symstream::cli
