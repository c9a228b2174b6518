//---------------------------------------------------------------------------//
//! \file decoh_cli.cpp
//! Command-line driver.
//---------------------------------------------------------------------------//
#include <iostream>
#include <string>
#include <vector>

#include "decoh/cli.hpp"

int main(int argc, char* argv[])
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return decoh::main_entry(args, std::cout, std::cerr);
}
