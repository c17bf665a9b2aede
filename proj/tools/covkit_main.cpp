#include "covkit/cli.hpp"

int main(int argc, char** argv) { return covkit::cli_main(argc, argv); }
