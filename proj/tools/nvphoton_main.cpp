#include <iostream>
#include <string>
#include <vector>

#include "nvphoton/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return nvphoton::cli::main_with_args(args, std::cout, std::cerr);
}
