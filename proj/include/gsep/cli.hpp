#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gsep {

// Runs the command line `args` (without the program name). Exit status 0 on
// success, 1 on a failed check or library error, 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gsep
