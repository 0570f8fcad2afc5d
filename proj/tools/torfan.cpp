#include "torfan/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const torfan::CommandResult result = torfan::run(args);
  if (!result.diagnostics.empty()) std::cerr << result.diagnostics << (result.diagnostics.back() == '\n' ? "" : "\n");
  std::cout << result.render();
  return result.exit_code();
}
