#include <iostream>

#include "iftt_pin/cli.hpp"

int main(int argc, char** argv)
{
    return iftt::cli::run(argc, argv, std::cin, std::cout, std::cerr);
}
