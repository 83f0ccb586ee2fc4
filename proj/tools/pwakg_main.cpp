#include <iostream>

#include "pwakg/cli/commands.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return pwakg::cli::main(argc, argv, {std::cout, std::cerr, pwakg::cli::color_enabled()});
}
