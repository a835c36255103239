#include <iostream>

#include "qzero/cli.hpp"

int main(int argc, char** argv) { return qzero::cli::run(argc, argv, std::cout, std::cerr); }
