#include "emoa/cli.hpp"

int main(int argc, char** argv) { return emoa::cli_main(argc, argv); }
