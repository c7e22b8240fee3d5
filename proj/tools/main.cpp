#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  return lakebloom::cli::run({argv + 1, argv + argc}, std::cerr);
}
