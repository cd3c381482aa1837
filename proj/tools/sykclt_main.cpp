#include <iostream>
#include <string>
#include <vector>

#include "sykclt/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return sykclt::dispatch(args, std::cout, std::cerr);
}
