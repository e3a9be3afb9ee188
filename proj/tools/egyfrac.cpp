#include <iostream>

#include "egyfrac/cli.hpp"

int main(int argc, char** argv) { return egyfrac::cli::run(argc, argv, std::cout, std::cerr); }
