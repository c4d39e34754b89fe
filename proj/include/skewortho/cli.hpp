#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace skewortho {

// Exit codes of the command-line tool.
constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

// Runs the tool on argv-style arguments (args[0] is the program name),
// writing tables to `out` and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace skewortho
