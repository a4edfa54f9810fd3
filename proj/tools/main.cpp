#include <iostream>

#include "seqig/cli.hpp"

int main(int argc, char** argv) {
    return seqig::cli::run(argc, argv, std::cout, std::cerr);
}
