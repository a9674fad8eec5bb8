#include "qng/cli.hpp"

int main(int argc, char** argv) { return qng::cli::main(argc, argv); }
