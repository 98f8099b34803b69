#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hypersum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMalformed = 1;
inline constexpr int kExitCapExceeded = 2;
inline constexpr int kExitInvariant = 3;

/// Runs one command. `args` excludes the program name. Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hypersum::cli
