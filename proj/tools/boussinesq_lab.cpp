#include <iostream>
#include <string>
#include <vector>

#include "lab/lab.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return bq::lab::run(args, std::cout, std::cerr);
}
