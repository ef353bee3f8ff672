#include "rlab/harness/cli.hpp"

int main(int argc, char** argv) { return rlab::harness::cli_main(argc, argv); }
