#include <pdmwell/cli.hpp>

#include <iostream>

int main(int argc, char** argv) {
  return pdmwell::cli::run_cli(argc, argv, std::cout, std::cerr);
}
