#include <iostream>

#include "mixfrac/cli.hpp"

int main(int argc, char** argv) { return mixfrac::cli_main(argc, argv, std::cout, std::cerr); }
