#include "gazeff/cli.hpp"

int main(int argc, char** argv) { return gazeff::run_cli(argc, argv); }
