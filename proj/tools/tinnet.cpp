#include "tinnet/cli/commands.hpp"

int main(int argc, char** argv) { return tinnet::cli::run_command(argc, argv); }
