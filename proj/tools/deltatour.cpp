#include "deltatour/cli.hpp"

int main(int argc, char** argv) { return deltatour::run_cli(argc, argv); }
