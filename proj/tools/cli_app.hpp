#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace dpsi::cli {

// Exit codes: 0 everything holds, 1 a mathematical FAILS/INCONCLUSIVE,
// 2 usage, configuration or domain error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitMath = 1;
inline constexpr int kExitUsage = 2;

using EnvLookup = std::function<const char*(const char*)>;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        const EnvLookup& env);

} // namespace dpsi::cli
