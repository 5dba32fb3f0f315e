#include <iostream>

#include "powerdeform_tools/cli.hpp"

int main(int argc, char** argv) {
  return powerdeform::tools::dispatch(argc, argv, std::cout, std::cerr);
}
