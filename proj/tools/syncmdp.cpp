#include <iostream>

#include <syncmdp/cli.hpp>

int main(int argc, char **argv) { return syncmdp::cli_main(argc, argv, std::cout, std::cerr); }
