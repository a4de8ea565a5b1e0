#include <iostream>

#include "clusterforge/cli.hpp"

int main(int argc, char** argv) {
  return clusterforge::run_cli(std::vector<std::string>(argv, argv + argc), std::cin, std::cout, std::cerr);
}
