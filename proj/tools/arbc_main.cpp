#include "arbc/cli.hpp"

int main(int argc, char** argv) { return arbc::cli::run(argc, argv); }
