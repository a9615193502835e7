#include "tbaudit/cli.hpp"

int main(int argc, char** argv) { return tbaudit::cli_main(argc, argv); }
