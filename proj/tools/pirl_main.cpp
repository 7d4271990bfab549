#include "pirl/cli.hpp"

int main(int argc, char** argv) { return pirl::cli::run(argc, argv); }
