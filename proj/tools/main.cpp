#include "frac_orlicz/cli.hpp"

int main(int argc, char** argv) { return frac_orlicz::cli::run(argc, argv); }
