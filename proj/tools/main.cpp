#include "cli.hpp"

int main(int argc, char** argv) { return bitrial::cli::run_cli(argc, argv); }
