#include <iostream>

#include "holosym/cli.hpp"

int main(int argc, char** argv) { return holosym::run_cli(argc, argv, std::cout, std::cerr); }
