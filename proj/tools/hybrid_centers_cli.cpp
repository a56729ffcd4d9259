#include <iostream>
#include <string>
#include <vector>

#include "hybrid_centers/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return hc::cli::run(args, std::cout, std::cerr);
}
