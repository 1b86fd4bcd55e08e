#include "embfin/cli.hpp"

int main(int argc, char** argv) { return embfin::run_cli_main(argc, argv); }
