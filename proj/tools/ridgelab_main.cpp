#include "ridgelab/cli.hpp"

int main(int argc, char** argv) { return ridgelab::run_cli(argc, argv); }
