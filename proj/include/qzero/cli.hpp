#pragma once

#include <iosfwd>

namespace qzero::cli {

// Exit status of `run`.
enum ExitCode : int {
  kPass = 0,
  kClaimFailed = 1,
  kInconclusive = 2,
  kUsageError = 3,
};

/// Parses argv, runs one subcommand and writes its report to `out` (or to
/// --out). Diagnostics go to `err` as a single line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qzero::cli
