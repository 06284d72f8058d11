#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace orthoscalar::cli {

/// Exit codes. A report's status determines its exit code and nothing else.
enum class Status : int {
  holds = 0,          // success / the property holds
  fails = 1,          // the property fails (not orthoscalar, not Schur, ...)
  invalid_input = 2,  // malformed or unusable input
  degenerate = 3,     // numerical degeneracy or non-convergence
};

/// Runs one command. `args` excludes the program name. Inputs named "-" are
/// read from `in`.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace orthoscalar::cli
