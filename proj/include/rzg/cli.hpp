#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rzg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;  // a verification found a counterexample
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResources = 3;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rzg::cli
