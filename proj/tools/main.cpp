#include "valnet/cli.hpp"

int main(int argc, char** argv) { return valnet::cli::run_cli(argc, argv); }
