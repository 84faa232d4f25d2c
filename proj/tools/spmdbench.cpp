#include <iostream>
#include <string>
#include <vector>

#include "spmdbench/harness/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return spmdbench::harness::run_cli(args, std::cout, std::cerr);
}
