#include <cstdlib>
#include <iostream>

#include <unistd.h>

#include "pants/cli.hpp"

int main(int argc, char** argv) {
  const bool color = std::getenv("NO_COLOR") == nullptr && ::isatty(STDERR_FILENO);
  return pants::cli::run(argc, argv, {std::cout, std::cerr, color});
}
