#include "cli.hpp"

int main(int argc, char** argv) { return verinews::cli::run(argc, argv); }
