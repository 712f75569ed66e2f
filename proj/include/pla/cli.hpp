// Command line front end. Kept as a library call so tests can run the whole
// tool in-process without spawning.

#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace pla {

// argv-style arguments minus the program name. Returns process exit code.
// Normal output goes to `out`; errors go to std::cerr.
int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout);

}  // namespace pla
