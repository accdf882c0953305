#pragma once

#include <iosfwd>

namespace homophily::cli {

/// Exit codes returned by run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInvariantViolation = 2;

/// Parses argv and dispatches to one of the subcommands analyze, prune,
/// generate, sweep, predict, verify or hist.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace homophily::cli
