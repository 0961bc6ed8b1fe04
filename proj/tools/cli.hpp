#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace treecode::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerificationFailed = 2;

/// Runs one command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace treecode::cli
