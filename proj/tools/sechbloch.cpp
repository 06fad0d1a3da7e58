#include "sechbloch/cli.hpp"

int main(int argc, char** argv) { return sechbloch::cli::main_entry(argc, argv); }
