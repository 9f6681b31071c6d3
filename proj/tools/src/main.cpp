#include "lowrank/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return lowrank::cli::main_entry(argc, argv, std::cout, std::cerr);
}
