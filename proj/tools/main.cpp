#include "cli.hpp"

int main(int argc, char** argv) { return infodens::run_cli(argc, argv); }
