#include "hamcond/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return hamcond::cli::dispatch(argc, argv, std::cout, std::cerr);
}
