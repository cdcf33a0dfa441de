#pragma once

#include <iosfwd>

namespace atc::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kInput = 2, kEmpty = 3 };

/// Runs one `atc` invocation. Results go to `out`, one-line diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace atc::cli
