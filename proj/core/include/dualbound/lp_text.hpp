#pragma once

#include <string>
#include <string_view>

#include "dualbound/linear_program.hpp"

namespace dualbound {

// CPLEX-style LP text: objective section, "Subject To" with named rows,
// a Bounds section listing free variables (omitted when there are none) and
// a closing "End". Coefficients with a terminating decimal expansion are
// written exactly; others as 17 significant digits preceded by a comment
//   \ exact <row> <variable|#rhs|#const> p/q
// that read_lp_text uses to restore the exact value.
std::string write_lp_text(const LinearProgram& p);

// Parses the subset of the format produced by write_lp_text (plus ordinary
// hand-written files in the same dialect). Variables are declared in order of
// first appearance. Throws std::invalid_argument on malformed input.
LinearProgram read_lp_text(std::string_view text);

}  // namespace dualbound
