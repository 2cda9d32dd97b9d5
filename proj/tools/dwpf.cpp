#include <iostream>

#include "dwpf/cli.hpp"

int main(int argc, char** argv) { return dwpf::run_cli(argc, argv, std::cout, std::cerr); }
