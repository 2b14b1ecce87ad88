#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hsm::cli {

// Exit codes: 0 success or pass, 1 check failed, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

// Runs the command line `args` (without the program name), writing results
// to `out` (or the --out file) and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace hsm::cli
