#include "fraisse/cli.hpp"

int main(int argc, char** argv) { return fraisse::cli::main(argc, argv); }
