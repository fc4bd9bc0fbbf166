#include <iostream>

#include "summa_cli/cli.hpp"

int main(int argc, char** argv) { return summa::cli::run(argc, argv, std::cout, std::cerr); }
