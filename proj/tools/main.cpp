#include "gasketpile/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return gasketpile::run_cli(argc, argv, std::cin, std::cout, std::cerr);
}
