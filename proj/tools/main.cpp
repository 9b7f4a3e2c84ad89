#include <iostream>
#include <string>
#include <vector>

#include "equicycle/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return equicycle::cli::run(args, std::cout, std::cerr);
}
