#include "casimir/cli/app.hpp"

int main(int argc, char** argv) { return casimir::cli::run_app(argc, argv); }
