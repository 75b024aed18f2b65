#include "reqtax/cli.hpp"

int main(int argc, char** argv) { return reqtax::cli::run(argc, argv); }
