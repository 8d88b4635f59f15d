#include <iostream>

#include "itm/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return itm::cli::run(args, std::cout, std::cerr);
}
