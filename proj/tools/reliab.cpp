#include <iostream>

#include "reliab/cli.hpp"

int main(int argc, char** argv) {
  return reliab::cli::run(argc, argv, std::cout, std::cerr);
}
