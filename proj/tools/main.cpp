#include <iostream>

#include "leafbridge/cli.hpp"

int main(int argc, char** argv) { return leafbridge::cli::run(argc, argv, std::cout, std::cerr); }
