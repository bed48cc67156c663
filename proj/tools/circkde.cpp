#include <iostream>

#include "circkde/cli.hpp"

int main(int argc, char** argv) { return circkde::cli::run(argc, argv, std::cout, std::cerr); }
