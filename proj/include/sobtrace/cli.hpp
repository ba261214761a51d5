#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sobtrace::cli {

enum ExitCode : int {
  ok = 0,
  failure = 1,
  invalid_input = 2,
  not_converged = 3,
};

/// Runs the command line `args` (args[0] is the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sobtrace::cli
