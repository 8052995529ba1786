#include <iostream>

#include "liouville/lab/command_line.hpp"

int main(int argc, char** argv) {
  return liouville::lab::main_entry(argc, argv, std::cout, std::cerr);
}
