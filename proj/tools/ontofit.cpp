#include <iostream>

#include "ontofit/cli.hpp"

int main(int argc, char** argv) { return ontofit::run_cli(argc, argv, std::cout, std::cerr); }
