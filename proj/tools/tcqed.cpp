#include <iostream>

#include "tcqed/cli.hpp"

int main(int argc, char** argv) { return tcqed::cli::run(argc, argv, std::cout, std::cerr); }
