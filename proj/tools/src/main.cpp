#include <iostream>

#include "qschur/cli.hpp"

int main(int argc, char** argv) { return qschur::cli::run(argc, argv, std::cout, std::cerr); }
