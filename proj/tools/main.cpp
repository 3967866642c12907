#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return eqlab::cli::run(argc, argv, std::cout, std::cerr); }
