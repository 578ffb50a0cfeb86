#include <iostream>
#include <string>
#include <vector>

#include "nbcqi/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return nbcqi::run(args, std::cout, std::cerr);
}
