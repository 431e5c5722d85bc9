#include <iostream>

#include "permutangle/cli.hpp"

int main(int argc, char** argv) { return permutangle::cli::run(argc, argv, std::cout, std::cerr); }
