#include <iostream>
#include <string>
#include <vector>

#include "bellbound/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return bellbound::cli_main(args, std::cout, std::cerr);
}
