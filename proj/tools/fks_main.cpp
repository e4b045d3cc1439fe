#include <iostream>
#include <string>
#include <vector>

#include "fks/cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return fks::cli::run(args, std::cout, std::cerr);
}
