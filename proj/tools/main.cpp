#include "spinwitness/cli.hpp"

int main(int argc, char** argv) { return spinwitness::cli::run(argc, argv); }
