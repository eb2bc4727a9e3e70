#include "vermawb/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return vwb::cli::main(argc, argv, std::cout, std::cerr);
}
