#include "swhw/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return swhw::cli::run(argc, argv, std::cout, std::cerr); }
