#include <iostream>

#include "spectral_cli/registry.hpp"

int main(int argc, char** argv) {
  return spectral::cli::main_entry(argc, argv, spectral::cli::Registry::with_defaults(), std::cout, std::cerr);
}
