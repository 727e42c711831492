#include <iostream>

#include "ellsurf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ellsurf::run_cli(args, std::cout, std::cerr);
}
