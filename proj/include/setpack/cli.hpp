#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace setpack::cli {

enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,  // solver breakdown; not expected on valid input
  kBadInput = 2,
  kOracleTooLarge = 3,
  kUncertified = 4,
};

// Entry point shared by the executable and the tests. args[0] is the program
// name. Subcommands: solve, generate, oracle, evaluate.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace setpack::cli
