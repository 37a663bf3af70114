#include <iostream>

#include "presto/cli.hpp"

int main(int argc, char** argv) {
  return presto::runCommand(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
