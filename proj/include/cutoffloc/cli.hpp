#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cutoffloc {

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 2;
inline constexpr int kExitUsage = 64;

/// The cutoffloc command line. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cutoffloc
