#include <iostream>

#include "dwtstego/cli.hpp"

int main(int argc, char** argv) {
  return dwtstego::cli::run(argc, argv, std::cout, std::cerr);
}
