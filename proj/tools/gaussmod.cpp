#include "gaussmod/cli.hpp"

int main(int argc, char** argv) { return gaussmod::cli::main_entry(argc, argv); }
