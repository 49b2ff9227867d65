#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace infgpd {

enum ExitCode { exit_ok = 0, exit_check = 1, exit_parse = 2, exit_file = 3 };

// Runs one command line; the report goes to out and diagnostics to err.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace infgpd
