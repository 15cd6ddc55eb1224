#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sfid::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitRuleFails = 1;
inline constexpr int kExitInputError = 2;

// Runs `sfid <args...>` (program name excluded). Human output and JSON go to
// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sfid::cli
