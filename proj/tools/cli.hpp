#pragma once

#include <iosfwd>

namespace spherewarp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitProcessing = 1;
inline constexpr int kExitUsage = 2;

// Subcommands: render, distortion, compare, vectors, info.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spherewarp::cli
