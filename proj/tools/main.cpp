#include <iostream>

#include "minmod/cli.hpp"

int main(int argc, char** argv) { return minmod::run_cli(argc, argv, std::cout, std::cerr); }
