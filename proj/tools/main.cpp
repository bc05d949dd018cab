#include "hullsolve/cli.hpp"

int main(int argc, char** argv) { return hullsolve::cli::cli_main(argc, argv); }
