#include <iostream>
#include <string>
#include <vector>

#include "qoi/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qoi::run(std::move(args), std::cin, std::cout);
}
