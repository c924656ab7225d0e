#include <iostream>
#include <string>
#include <vector>

#include "domwb/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return domwb::cli::run(args, std::cout, std::cerr);
}
