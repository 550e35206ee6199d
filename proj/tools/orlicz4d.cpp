#include "o4d/cli.hpp"

int main(int argc, char** argv) { return o4d::cli::run(argc, argv); }
