#include <iostream>

#include "gospace/cli.hpp"

int main(int argc, char** argv) { return gospace::run_cli(argc, argv, std::cout, std::cerr); }
