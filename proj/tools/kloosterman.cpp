#include "kloost/cli.hpp"

int main(int argc, char** argv) { return kloost::cli_main(argc, argv); }
