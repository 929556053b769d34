#include <iostream>

#include "infnom/cli.hpp"

int main(int argc, char** argv) {
  return infnom::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
