#include "pdmean/cli.hpp"

int main(int argc, char** argv) { return pdmean::cli_main(argc, argv); }
