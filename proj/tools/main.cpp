#include "mgmask/app/cli.hpp"

int main(int argc, char** argv) { return mgmask::app::run_cli(argc, argv); }
