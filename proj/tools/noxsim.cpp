#include "noxsim/app/cli.hpp"

int main(int argc, char** argv) { return noxsim::app::run_cli(argc, argv); }
