#include <iostream>
#include <string>
#include <vector>

#include "holoifs/cli/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return holoifs::cli::run_cli(args, std::cout, std::cerr);
}
