#include <iostream>

#include "invariety/cli/cli.hpp"

int main(int argc, char** argv) { return invariety::cli::run(argc, argv, std::cout, std::cerr); }
