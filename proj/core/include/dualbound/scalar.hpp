#pragma once

#include <string>
#include <variant>

#include "dualbound/high_prec.hpp"
#include "dualbound/rational.hpp"

namespace dualbound {

// A value that is either exact or a directed-rounded float.
using Scalar = std::variant<Rational, HighPrecFloat>;

inline bool is_exact(const Scalar& s) { return std::holds_alternative<Rational>(s); }

double to_double(const Scalar& s);
// Exact values convert with the requested rounding; floats are copied.
HighPrecFloat to_float(const Scalar& s, Round r, mpfr_prec_t precision = default_precision());
int sign(const Scalar& s);
// "p/q" for exact values, `digits` significant digits for floats.
std::string format_scalar(const Scalar& s, int digits = 12);
// Decimal rendering regardless of representation.
std::string format_decimal(const Scalar& s, int digits = 12);

}  // namespace dualbound
