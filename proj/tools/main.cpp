#include "quadsep/cli.hpp"

int main(int argc, char** argv) { return quadsep::cli::run_main(argc, argv); }
