#include "cstgeo/cli.hpp"

int main(int argc, char** argv) { return cstgeo::cli::main(argc, argv); }
