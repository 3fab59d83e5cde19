#include <iostream>

#include "zmd_cli/cli.hpp"

int main(int argc, char** argv) { return zmd::cli::run(argc, argv, std::cout, std::cerr); }
