#include "srlaser/cli.hpp"

int main(int argc, char** argv) { return srl::run_cli(argc, argv); }
