#include "cli.hpp"

int main(int argc, char** argv) { return profitmax::cli::main(argc, argv); }
