#include <iostream>

#include "tacx/cli.hpp"

int main(int argc, char** argv) { return tacx::run(argc, argv, std::cout, std::cerr); }
