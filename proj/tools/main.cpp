#include "bautin/cli/commands.hpp"

int main(int argc, char** argv) { return bautin::cli::run_cli(argc, argv); }
