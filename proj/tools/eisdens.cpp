#include "eisdens/cli.hpp"

int main(int argc, char** argv) { return eisdens::cli::main(argc, argv); }
