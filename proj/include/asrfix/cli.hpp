#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace asrfix {

// Runs the command line `args` (program name excluded). Returns 0 on
// success, 1 on a usage error, 2 on a data or format error.
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace asrfix
