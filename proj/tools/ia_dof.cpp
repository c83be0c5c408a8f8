#include <iostream>

#include "iadof/cli.hpp"

int main(int argc, char** argv) {
  return iadof::cli::run(argc, argv, std::cout, std::cerr);
}
