#include <iostream>

#include "surfsing/cli.hpp"

int main(int argc, char** argv) { return surfsing::cli::run(argc, argv, std::cout, std::cerr); }
