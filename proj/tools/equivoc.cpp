#include <iostream>

#include "equivoc/commands.hpp"

int main(int argc, char** argv) { return equivoc::run_cli(argc, argv, std::cout, std::cerr); }
