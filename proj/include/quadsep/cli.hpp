#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace quadsep::cli {

/// Runs the command-line interface.  `args` excludes the program name.
/// Results go to `out`, diagnostics to `err`; `in` backs the "-" input.
/// Exit codes: 0 ran (and separated, for separate/mutual); 3 ran but not
/// separated; 2 input error; 4 internal inconsistency.
int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err);

int run_main(int argc, char** argv);

}  // namespace quadsep::cli
