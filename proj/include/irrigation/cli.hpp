#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace irr {

/// Entry point of the `irrigation` command line tool. `args` excludes the
/// program name. Returns 0 on success and 2 on invalid arguments.
///
/// Subcommands: theory, connect, sweep-c, sweep-r, clique-scan, regularity,
/// protocol.
int run_cli(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr);

}  // namespace irr
