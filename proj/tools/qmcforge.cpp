#include "qmcforge/cli.hpp"

int main(int argc, char** argv) { return qmcforge::runCli(argc, argv); }
