#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wm {

// Exit codes of the command-line tool.
enum ExitCode { kExitOk = 0, kExitUsage = 2, kExitDomain = 3, kExitStatistical = 4 };

// Runs the tool with args (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wm
