#include "mtb/cli.hpp"

int main(int argc, char** argv) { return mtb::run_cli(argc, argv); }
