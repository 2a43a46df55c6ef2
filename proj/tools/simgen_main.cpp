#include "simgen/pipelines/cli.hpp"

int main(int argc, char** argv) { return simgen::pipelines::cli_main(argc, argv); }
