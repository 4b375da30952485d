#include <iostream>
#include <string>
#include <vector>

#include "llc/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = llc::cli::run(args);
  std::cout << result.output;
  return result.exit_code;
}
