#include "confgate/harness/cli.hpp"

int main(int argc, char** argv) { return confgate::harness::run_cli(argc, argv); }
