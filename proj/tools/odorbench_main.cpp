#include <iostream>
#include <string>
#include <vector>

#include "odorbench/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return odorbench::RunCli(args, std::cout, std::cerr);
}
