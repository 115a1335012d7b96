#include "ghzt/cli.hpp"

int main(int argc, char** argv) { return ghzt::run_cli(argc, argv); }
