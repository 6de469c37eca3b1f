#include <iostream>

#include "mubent/cli.hpp"

int main(int argc, char** argv) { return mubent::cli::run(argc, argv, std::cout, std::cerr); }
