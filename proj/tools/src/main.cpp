#include "landau_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return landau::cli::run(argc, argv, std::cout, std::cerr); }
