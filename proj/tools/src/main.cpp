#include <iostream>

#include "atc_cli/cli.hpp"

int main(int argc, char** argv) { return atc::cli::run(argc, argv, std::cout, std::cerr); }
