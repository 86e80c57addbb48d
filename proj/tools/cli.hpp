#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pervcheck {

/// Exit statuses of the command line front end.
enum ExitStatus : int { kExitOk = 0, kExitFailed = 1, kExitInput = 2, kExitResource = 3 };

/// Runs one command; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pervcheck
