#include "runner.hpp"

int main(int argc, char** argv) { return wignerlab::cli::main_entry(argc, argv); }
