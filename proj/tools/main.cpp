#include <iostream>

#include "adictile/cli.hpp"

int main(int argc, char** argv) { return adictile::run_cli(argc, argv, std::cout, std::cerr); }
