#include "noiselab/cli.hpp"

int main(int argc, char** argv) { return noiselab::cli::run(argc, argv); }
