#include <iostream>

#include "vnm/cli.hpp"

int main(int argc, char** argv) { return vnm::cli::run(argc, argv, std::cout, std::cerr); }
