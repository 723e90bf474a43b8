#include <iostream>
#include <string>
#include <vector>

#include "sbscache/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return sbscache::cli::run_cli(args, std::cout, std::cerr);
}
