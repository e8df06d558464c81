#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adelic {

// Parses and runs one command line (without the program name); prints the
// report or a structured error to `out`. Returns 0 when every check passed,
// 1 when a check failed, 2 on errors (bad flags, bad specs, library errors).
int run_cli(const std::vector<std::string>& args, std::ostream& out);

}  // namespace adelic
