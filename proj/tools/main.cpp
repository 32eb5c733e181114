#include "semprop/cli.hpp"

int main(int argc, char** argv) { return semprop::cli::run(argc, argv); }
