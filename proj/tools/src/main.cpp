#include <iostream>
#include <string>
#include <vector>

#include "sgc/tools/cli.hpp"

int main(int argc, char** argv) {
  return sgc::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
