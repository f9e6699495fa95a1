#include "steerkit/cli.hpp"

int main(int argc, char** argv) { return steerkit::run_cli(argc, argv); }
