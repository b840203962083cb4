#include <string>
#include <vector>

#include "ehmi/cli.hpp"

int main(int argc, char** argv) {
  return ehmi::run_cli(std::vector<std::string>(argv + 1, argv + argc));
}
