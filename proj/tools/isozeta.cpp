#include <iostream>
#include <string>
#include <vector>

#include "isozeta/cli_commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return isozeta::run_cli(args, std::cout, std::cerr);
}
