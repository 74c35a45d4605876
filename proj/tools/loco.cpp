#include "loco/cli.hpp"

int main(int argc, char** argv) { return loco::cli::run(argc, argv); }
