#include "vla/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return vla::cli::run_command(argc, argv, std::cout, std::cerr); }
