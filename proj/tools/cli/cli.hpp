#pragma once

// `dpsrk` command-line front end. Exit codes: 0 secure / success, 1 usage or
// parse error, 2 insecure at the requested point, 3 Monte Carlo self-check
// failure.

#include <iosfwd>
#include <string>
#include <vector>

namespace dpsrk::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInsecure = 2, kSelfCheck = 3 };

// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dpsrk::cli
