#include "nubshift/session.hpp"

int main(int argc, char** argv) { return nubshift::run_cli(argc, argv); }
