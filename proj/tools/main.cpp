#include <iostream>
#include <string>
#include <vector>

#include "kitten/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return kitten::run_cli(args, std::cout, std::cerr);
}
