#pragma once

// Command-line front end. Exit codes: 0 success, 1 acceptance failure or
// internal error, 2 usage error, 3 guard violation.

#include <ostream>
#include <string>
#include <vector>

namespace thompson::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitGuard = 3;

/// Largest vertex set the graph/surgery commands will build.
inline constexpr unsigned long long kMaxGraphVertices = 4'000'000;

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thompson::cli
