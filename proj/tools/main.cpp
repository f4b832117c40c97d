#include "mzi/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return mzi::run_cli(argc, argv, std::cout, std::cerr);
}
