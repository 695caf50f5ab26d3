#pragma once

#include <iosfwd>

namespace grudyn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

/// Environment variable naming the default directory for output artifacts.
inline constexpr const char* kOutDirEnv = "GRUDYN_OUT_DIR";

/// Parses argv and runs one subcommand. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace grudyn::cli
