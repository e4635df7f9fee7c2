#include <iostream>

#include "wishart/cli.hpp"

int main(int argc, char** argv) {
  return wishart::cli::run(argc, argv, std::cout, std::cerr);
}
