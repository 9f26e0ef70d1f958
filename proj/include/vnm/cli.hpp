#pragma once

#include <iosfwd>

namespace vnm::cli {

enum ExitCode : int { kSuccess = 0, kFail = 1, kUsage = 2 };

// Parses argv (argv[0] is the program name) and runs one command. The JSON
// report goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vnm::cli
