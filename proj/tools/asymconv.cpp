#include "asymconv/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return asymconv::run_cli(argc, argv, std::cout, std::cerr); }
