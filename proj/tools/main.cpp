#include <iostream>
#include <string>
#include <vector>

#include "pcf/commands.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  const auto res = pcf::cli::run(args);
  std::cout << res.out;
  std::cerr << res.err;
  return res.exit_code;
}
