#include <iostream>

#include "vdmlab/cli.hpp"

int main(int argc, char** argv) { return vdmlab::run_cli(argc, argv, std::cout, std::cerr); }
