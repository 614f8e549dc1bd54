#include <iostream>

#include "latnet/cli.hpp"

int main(int argc, char** argv) {
  return latnet::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
