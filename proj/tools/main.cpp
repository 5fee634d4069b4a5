#include <iostream>

#include "fgr/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return fgr::run_cli(args, std::cout, std::cerr);
}
