#include <iostream>
#include <string>
#include <vector>

#include "moran/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return moran::cli::run(args, std::cout, std::cerr);
}
