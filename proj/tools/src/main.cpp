#include <iostream>

#include "specrank_cli/cli.hpp"

int main(int argc, char** argv) {
  return specrank::cli_main(argc, argv, std::cout, std::cerr);
}
