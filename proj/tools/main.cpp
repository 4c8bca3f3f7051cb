#include "polypack/cli.hpp"

int main(int argc, char** argv) { return polypack::run(argc, argv); }
