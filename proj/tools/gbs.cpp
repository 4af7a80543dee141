#include <iostream>

#include "gbs/cli.hpp"

int main(int argc, char **argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return gbs::run_cli(args, std::cin, std::cout, std::cerr);
}
