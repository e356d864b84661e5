#include <iostream>

#include "nal/cli.hpp"

int main(int argc, char** argv) { return nal::cli::run(argc, argv, std::cout, std::cerr); }
