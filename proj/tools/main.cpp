#include "dirichlet/harness.hpp"

int main(int argc, char** argv)
{
    return dirichlet::harness::run_cli(argc, argv);
}
