#include "ineq/cli.hpp"

int main(int argc, char** argv) { return ineq::cli_main(argc, argv); }
