#include "cli.hpp"

int main(int argc, char** argv) { return srgkit::cli::run(argc, argv); }
