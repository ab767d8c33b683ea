#include <iostream>

#include "optthresh/cli.hpp"

int main(int argc, char** argv) { return optthresh::cli::run_cli(argc, argv, std::cout, std::cerr); }
