#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace profbench::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 2;
inline constexpr int kExitUsage = 64;

/// Runs the profbench command line; `args` excludes the program name. Output goes to `out` unless --out names a
/// file; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace profbench::cli
