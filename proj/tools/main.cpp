#include "cli.hpp"

int main(int argc, char** argv) { return ecotour::cli::run_cli(argc, argv); }
