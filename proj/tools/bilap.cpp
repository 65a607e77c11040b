#include <iostream>

#include "bilap/cli.hpp"

int main(int argc, char** argv) { return bilap::cli::main_entry(argc, argv, std::cout, std::cerr); }
