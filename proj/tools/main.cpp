#include "hshear/cli.hpp"

int main(int argc, char** argv) { return hshear::cli::run(argc, argv); }
