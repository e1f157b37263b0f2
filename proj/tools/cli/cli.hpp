#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace stablefit::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDataError = 1;
inline constexpr int kUsageError = 2;

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads one finite number per line; blank lines and '#' comments are skipped.
/// Throws stablefit::DomainError naming the offending line.
std::vector<double> read_values(const std::string& path);

}  // namespace stablefit::cli
