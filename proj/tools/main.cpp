#include <iostream>

#include "subsetspace/cli.hpp"

int main(int argc, char** argv) {
  return subsetspace::cli::main_entry(argc, argv, std::cout, std::cerr);
}
