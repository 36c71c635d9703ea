#pragma once

#include <string>
#include <vector>

namespace slepsense::cli {

// Exit codes: 0 success, 2 configuration/usage errors, 3 numerical failures.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

// Entry point shared by the binary and the test suite. args excludes the
// program name, e.g. {"dpss", "--config", "cfg.json", "--out", "out"}.
int run(const std::vector<std::string>& args);

}  // namespace slepsense::cli
