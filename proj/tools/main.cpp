#include <iostream>

#include "veech_cli.hpp"

int main(int argc, char** argv) { return veech::cli::run(argc, argv, std::cout, std::cerr); }
