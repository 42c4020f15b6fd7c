#include <iostream>

#include "hwarp/cli.hpp"

int main(int argc, char** argv) { return hwarp::run_cli(argc, argv, std::cout, std::cerr); }
