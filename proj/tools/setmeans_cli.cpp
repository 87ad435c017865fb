#include <iostream>

#include "setmeans/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    setmeans::CommandOutcome r = setmeans::runCommand(args);
    std::cout << r.out;
    std::cerr << r.err;
    return r.exitCode;
}
