#include "choaelm/cli.hpp"

int main(int argc, char** argv) { return choaelm::cli::run(argc, argv); }
