#include <iostream>

#include "hardlef/cli.hpp"

int main(int argc, char** argv) { return hardlef::cli::run(argc, argv, std::cout, std::cerr); }
