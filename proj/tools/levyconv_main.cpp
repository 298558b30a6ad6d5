#include <iostream>
#include <string>
#include <vector>

#include "levyconv/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return levyconv::run(args, std::cout, std::cerr);
}
