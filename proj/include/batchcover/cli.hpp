#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace batchcover {

// Parses and runs one subcommand (gen | vcdim | run | experiment | search).
// Returns 0 on success, 2 on flag/usage errors, 1 on runtime errors. A path
// of "-" means standard output (the `out` stream). Diagnostics go to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace batchcover
