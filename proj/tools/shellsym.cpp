#include <cstdlib>
#include <exception>
#include <iostream>

#include "shellsym/cli.hpp"

int main(int argc, char** argv) {
  try {
    return shellsym::cli::run(argc, argv, std::cout, std::cerr, std::getenv("SHELLSYM_SEED"));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
