#pragma once

#include <iosfwd>

namespace pslab::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerificationFailed = 1;
inline constexpr int kUsageError = 2;

// Parses argv and runs one subcommand. Output goes to `out`, diagnostics to
// `err`.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int dispatch(int argc, const char* const* argv);

}  // namespace pslab::cli
