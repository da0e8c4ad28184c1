#include <iostream>
#include <vector>

#include "hilbchow/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return hilbchow::run_cli(args, std::cout, std::cerr);
}
