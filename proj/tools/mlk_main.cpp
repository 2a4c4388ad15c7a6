#include "mlk/cli.hpp"

int main(int argc, char** argv) { return mlk::cli::run(argc, argv); }
