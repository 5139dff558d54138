#pragma once

#include <iosfwd>

namespace dwtstego::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDimension = 3;
inline constexpr int kExitIo = 4;

/// Entry point for the `dwtstego` tool: embed | extract | metrics | sweep.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dwtstego::cli
