#include <cstk/cli.hpp>

int main(int argc, char** argv) { return cstk::cli::run(argc, argv); }
