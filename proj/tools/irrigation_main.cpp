#include <string>
#include <vector>

#include "irrigation/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return irr::run_cli(args);
}
