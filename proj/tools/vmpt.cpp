#include "vmpt/cli.hpp"

int main(int argc, char** argv) { return vmpt::cli::run(argc, argv); }
