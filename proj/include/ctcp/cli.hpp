#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace ctcp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitUsage = 2;

// Runs one subcommand. `args` excludes the program name; `in` backs the "-"
// input path and `out` the default output.
int run(std::span<const std::string> args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace ctcp::cli
