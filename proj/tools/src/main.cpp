#include <iostream>

#include "netctl/cli.hpp"

int main(int argc, char** argv) { return netctl::cli::run(argc, argv, std::cout, std::cerr); }
