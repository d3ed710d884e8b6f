#include <iostream>

#include "hkt/cli.hpp"

int main(int argc, char** argv) { return hkt::run_cli(argc, argv, std::cout, std::cerr); }
