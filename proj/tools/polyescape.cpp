#include <iostream>

#include "polyescape/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return polyescape::run_cli(args, std::cout, std::cerr);
}
