#include <iostream>
#include <string>
#include <vector>

#include "starsample/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return starsample::run_cli(args, std::cout, std::cerr);
}
