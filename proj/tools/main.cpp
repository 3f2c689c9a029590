#include "bsdk/harness.hpp"

int main(int argc, char** argv) { return bsdk::cli_main(argc, argv); }
