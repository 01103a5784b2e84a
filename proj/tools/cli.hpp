#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace e2::cli {

// Exit codes.
inline constexpr int ok = 0;
inline constexpr int rejected = 1;
inline constexpr int inconclusive = 2;
inline constexpr int class_number = 3;
inline constexpr int bad_input = 4;
inline constexpr int unreadable = 5;
inline constexpr int mismatch = 6;

/// Runs the command line `args` (without the program name). Data goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace e2::cli
