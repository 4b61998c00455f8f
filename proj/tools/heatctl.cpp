#include "heatctl/cli.hpp"

int main(int argc, char** argv) { return heatctl::cli_main(argc, argv); }
