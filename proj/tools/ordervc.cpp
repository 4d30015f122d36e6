#include <iostream>
#include <string>
#include <vector>

#include "ordervc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return ordervc::cli::run(args, std::cout, std::cerr);
}
