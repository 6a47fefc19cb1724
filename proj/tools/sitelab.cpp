#include <iostream>

#include "sitelab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return sitelab::cli::run(args, std::cout, std::cerr);
}
