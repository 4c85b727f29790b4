#include "knotforge/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return knotforge::cli::run(argc, argv, std::cout, std::cerr); }
