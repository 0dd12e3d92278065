#include <iostream>
#include <string>
#include <vector>

#include "ordrep/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ordrep::cli::run(args, std::cout, std::cerr);
}
