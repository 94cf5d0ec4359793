#include <iostream>
#include <string>
#include <vector>

#include "rieszwell/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return rieszwell::cli::main_entry(args, std::cout, std::cerr);
}
