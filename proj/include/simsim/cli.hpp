#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "simsim/matspace.hpp"

namespace simsim::cli {

enum ExitCode : int {
  kOk = 0,
  kMismatch = 1,
  kUsage = 2,
  kResource = 3,
};

/// Runs one invocation; args excludes the program name.  Reports go to out,
/// diagnostics and elapsed times to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Tuples from a matrix file: header "n k q" (q prime <= 7), then k blocks of
/// n rows per tuple, tuples separated by "---".  Blank lines and lines
/// starting with '#' are ignored.  Throws InvalidArgument with a line number.
std::vector<std::vector<Matrix>> parse_matrix_file(const std::string& text);

}  // namespace simsim::cli
