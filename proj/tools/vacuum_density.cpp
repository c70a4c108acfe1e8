#include <iostream>

#include "vacuum/cli.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return vacuum::cli::run(argc, argv, std::cout, std::cerr);
}
