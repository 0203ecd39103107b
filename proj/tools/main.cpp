#include <iostream>

#include "twopoint/cli.hpp"

int main(int argc, char** argv) { return twopoint::cli::run(argc, argv, std::cout, std::cerr); }
