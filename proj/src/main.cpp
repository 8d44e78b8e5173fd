#include <iostream>

#include "sp2spec/cli.hpp"

int main(int argc, char** argv) {
    return sp2spec::run_cli(argc, argv, std::cout, std::cerr);
}
