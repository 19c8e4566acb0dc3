#include "commands.hpp"

int main(int argc, char** argv) { return pcqg::cli::run(argc, argv); }
