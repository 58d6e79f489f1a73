#include <iostream>

#include "zplot/cli.hpp"

int main(int argc, char** argv) {
    return zplot::run_cli(argc, argv, std::cout, std::cerr);
}
