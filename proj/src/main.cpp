#include "decoh/runner.hpp"

int main(int argc, char** argv) { return decoh::run_cli(argc, argv); }
