/**
 * @file main.cpp
 * @brief arcscan command-line entry point.
 */
#include "arcscan/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return arcscan::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
