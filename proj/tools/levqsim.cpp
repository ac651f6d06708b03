#include "levqsim/cli.hpp"

int main(int argc, char** argv)
{
    return levqsim::cli::main_entry(argc, argv);
}
