#include <iostream>
#include <string>
#include <vector>

#include "symstream/cli.hpp"

int main(int argc, char **argv) {
  std::vector<std::string> args(argv, argv + argc);
  return symstream::cli::run(args, std::cout, std::cerr);
}
