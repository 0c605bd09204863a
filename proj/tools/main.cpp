#include <iostream>
#include <string>
#include <vector>

#include "dirac_pauli/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return dirac_pauli::cli::run(args, std::cout, std::cerr);
}
