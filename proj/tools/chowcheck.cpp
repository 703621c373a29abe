#include "chow/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return chow::cli::run(argc, argv, std::cout, std::cerr); }
