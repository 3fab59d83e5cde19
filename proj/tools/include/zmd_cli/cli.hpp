#pragma once

#include <ostream>

namespace zmd::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kUnstable = 2 };

/// Parses argv, runs one subcommand, writes results to `out` (or --output) and
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace zmd::cli
