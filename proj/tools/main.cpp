#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) { return nopath::cli::main_entry(argc, argv, std::cout); }
