#include <iostream>

#include "spacings/cli.hpp"

int main(int argc, char** argv) { return spacings::cli::run(argc, argv, std::cout, std::cerr); }
