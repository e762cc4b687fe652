#include <iostream>

#include "holed/cli.hpp"

int main(int argc, char** argv) { return holed::run_cli(argc, argv, std::cout, std::cerr); }
