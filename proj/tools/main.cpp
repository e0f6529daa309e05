#include "imean/cli.hpp"

int main(int argc, char** argv) { return imean::cli::run(argc, argv); }
