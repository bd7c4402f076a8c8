#include <iostream>
#include <string>
#include <vector>

#include "alexlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto res = alexlab::cli::run(args);
  std::cout << res.out;
  std::cerr << res.err;
  return res.code;
}
