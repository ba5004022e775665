#include <iostream>

#include "rzg/cli.hpp"

int main(int argc, char** argv) {
  return rzg::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
