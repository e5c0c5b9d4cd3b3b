#include "blockrecon/cli/dispatch.hpp"

int main(int argc, char** argv) { return blockrecon::cli::dispatch(argc, argv); }
