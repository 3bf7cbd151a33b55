#include <iostream>

#include "apfgrid/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return apfgrid::run_cli(args, std::cout, std::cerr);
}
