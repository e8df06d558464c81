#include <iostream>
#include <string>
#include <vector>

#include "adelic/cli.hpp"

int main(int argc, char** argv) {
  return adelic::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout);
}
