#include <iostream>

#include "cangeo/cli.hpp"

int main(int argc, char** argv) { return cangeo::run(argc, argv, std::cout, std::cerr); }
