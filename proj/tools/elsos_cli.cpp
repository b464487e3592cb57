#include <iostream>
#include <string>
#include <vector>

#include "elsos/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return elsos::cli::dispatch(args, std::cout, std::cerr);
}
