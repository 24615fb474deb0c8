#include <iostream>
#include <string>
#include <vector>

#include "setpack/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return setpack::cli::run(args, std::cout, std::cerr);
}
