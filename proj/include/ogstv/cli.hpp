#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ogstv/kernel.hpp"

namespace ogstv {

// Parses a colon-delimited kernel spec: "gaussian:SIZE:STD", "average:SIZE",
// "identity" or "file:PATH". Throws std::invalid_argument for malformed
// specs; file loading errors propagate as std::runtime_error.
Kernel parse_kernel_spec(const std::string& spec);

// Runs the command-line front end on the given arguments (program name
// excluded). Results and diagnostics go to `out`/`err`. Exit codes:
//   0 success, 1 usage error, 2 I/O or parse failure, 3 numeric failure.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace ogstv
