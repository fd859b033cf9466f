#include "orgsig/cli.hpp"

int main(int argc, char** argv) { return orgsig::cli_main(argc, argv); }
