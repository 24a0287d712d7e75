#include <iostream>

#include "spinr/cli.hpp"

int main(int argc, char** argv) { return spinr::cli::run(argc, argv, std::cout, std::cerr); }
