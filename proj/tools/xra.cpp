#include <iostream>

#include "xra/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return xra::run_cli(args, std::cout, std::cerr);
}
