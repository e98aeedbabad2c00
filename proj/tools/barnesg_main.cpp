#include <iostream>

#include "barnesg/cli/commands.hpp"

int main(int argc, char** argv)
{
    return barnesg::cli::main_entry(argc, argv, std::cout, std::cerr);
}
