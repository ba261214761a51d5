#include <iostream>
#include <string>
#include <vector>

#include "sobtrace/cli.hpp"

int main(int argc, char** argv) {
  return sobtrace::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
