#include <iostream>
#include <string>
#include <vector>

#include "circa/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return circa::run_cli(args, std::cout, std::cerr);
}
