#pragma once

#include <iosfwd>

namespace gasketpile {

/// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitVerificationFailed = 1, kExitUsage = 2 };

/// Largest level accepted by the command line.
inline constexpr int kCliLevelCap = 8;

/// Entry point of the `gasketpile` binary; `in` feeds `--config -`.
int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace gasketpile
