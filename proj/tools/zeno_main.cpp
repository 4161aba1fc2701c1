#include <iostream>

#include "zeno/commands.hpp"

int main(int argc, char** argv) {
    return zeno::cli::cli_main(argc, argv, std::cout, std::cerr);
}
