#include "issprobe/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return issprobe::run_cli(argc, argv, std::cout, std::cerr); }
