#include "truncalab/cli.hpp"

int main(int argc, char** argv) { return truncalab::cli::run_main(argc, argv); }
