#include <iostream>

#include "etaparity/cli.hpp"

int main(int argc, char** argv) {
  return etaparity::run_cli(argc, argv, std::cout, std::cerr);
}
