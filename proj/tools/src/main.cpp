#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) { return dshock::cli::run(argc, argv, std::cout, std::cerr); }
