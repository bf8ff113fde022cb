#pragma once

#include <ostream>

namespace conicrank {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitSizeGuard = 65;

/// Entry point of the conicrank command line; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace conicrank
