#include <iostream>

#include <lowss/cli.hpp>

int main(int argc, char** argv) {
    return lowss::run_cli(argc, argv, std::cout, std::cerr);
}
