#include <iostream>

#include "conicrank/cli.hpp"

int main(int argc, char** argv) { return conicrank::run_cli(argc, argv, std::cout, std::cerr); }
