#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gpn::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitData = 1;
inline constexpr int kExitUsage = 2;

// Runs one gpnc invocation. `args` excludes the program name. Files named
// "-" map to `in` / `out`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace gpn::cli
