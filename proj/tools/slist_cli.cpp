#include <iostream>

#include "slist/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return slist::cli::run(args, std::cout, std::cerr);
}
