#include <iostream>

#include "fuhp/cli.hpp"

int main(int argc, char** argv) { return fuhp::run_cli(argc, argv, std::cout, std::cerr); }
