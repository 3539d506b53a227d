#include <iostream>

#include "mesoqo/cli/app.hpp"

int main(int argc, char** argv) { return mesoqo::cli::run_app(argc, argv, std::cout, std::cerr); }
