// SPDX-License-Identifier: MIT
// Copyright (c) 2026 stablefield-cov contributors

#include <iostream>

#include "stablefield/cli.hpp"

int main(int argc, char** argv) {
  return stablefield::run_cli(argc, argv, std::cout, std::cerr);
}
