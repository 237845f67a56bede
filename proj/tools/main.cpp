#include <cstdlib>
#include <iostream>

#include "cli_app.hpp"

int main(int argc, char** argv) {
  return sentinel::cli::main_entry(argc, argv, std::cout, std::cerr,
                                   std::getenv(sentinel::cli::kSeedEnvVar));
}
