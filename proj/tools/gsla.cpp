#include <iostream>

#include "gsla/cli.hpp"

int main(int argc, char** argv) { return gsla::run(argc, argv, std::cin, std::cout, std::cerr); }
