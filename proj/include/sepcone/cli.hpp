#pragma once

#include <ostream>

namespace sepcone {

// Full command-line front end. Returns the process exit code: 0 for success
// or a separable verdict, 2 for usage and parse errors, 3 for an entangled
// verdict, 4 for inconclusive, 5 for I/O failures.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sepcone
