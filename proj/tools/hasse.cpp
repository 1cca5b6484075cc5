#include "hasse/cli.hpp"

int main(int argc, char** argv) { return hasse::cli::run(argc, argv); }
