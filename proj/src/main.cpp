#include <iostream>

#include "sepcone/cli.hpp"

int main(int argc, char** argv) {
    return sepcone::run_cli(argc, argv, std::cout, std::cerr);
}
