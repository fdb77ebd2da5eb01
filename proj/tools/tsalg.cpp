#include <iostream>

#include "tsalg/cli.hpp"

int main(int argc, char** argv)
{
    return tsalg::cli::run(argc, argv, std::cout, std::cerr);
}
