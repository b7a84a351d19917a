#pragma once

#include <iosfwd>

namespace cctp::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInputError = 2, kInvariant = 3 };

/// Entry point of the `cctp` tool, with injectable streams for testing.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cctp::cli
