#include <iostream>
#include <string>
#include <vector>

#include "batchcover/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return batchcover::dispatch(args, std::cout, std::cerr);
}
