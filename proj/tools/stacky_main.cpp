#include <iostream>
#include <string>
#include <vector>

#include "stacky/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return stacky::run_cli(args, std::cin, std::cout, std::cerr);
}
