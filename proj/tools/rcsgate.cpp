#include <iostream>
#include <string>
#include <vector>

#include "rcsgate/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return rcsgate::cli::run(args, std::cout, std::cerr);
}
