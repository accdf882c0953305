#include <iostream>

#include "homophily/cli.hpp"

int main(int argc, char** argv) { return homophily::cli::run(argc, argv, std::cout, std::cerr); }
