#pragma once

#include <string>
#include <vector>

namespace ehmi {

// Entry point of the command-line tool; argv-style arguments without the
// program name. Returns 0 iff the command completed without errors. All
// emitted files and stdout lines are byte-deterministic for fixed inputs.
int run_cli(const std::vector<std::string>& args);

}  // namespace ehmi
