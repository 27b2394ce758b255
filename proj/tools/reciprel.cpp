#include "reciprel/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return reciprel::cli::run(argc, argv, std::cout, std::cerr); }
