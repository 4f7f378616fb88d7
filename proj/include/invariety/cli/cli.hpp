#pragma once

#include <ostream>

namespace invariety::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerification = 2;

// Parses argv (flags override a --config file, which overrides defaults),
// runs the subcommand and writes its output to --output or to `out`.
// Diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace invariety::cli
