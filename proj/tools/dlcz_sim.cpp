#include <iostream>
#include <string>
#include <vector>

#include "dlcz/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return dlcz::cli::run(args, std::cout, std::cerr);
}
