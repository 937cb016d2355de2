#include "dualbound/scalar.hpp"

namespace dualbound {

double to_double(const Scalar& s) {
  return std::visit([](const auto& v) { return v.to_double(); }, s);
}

HighPrecFloat to_float(const Scalar& s, Round r, mpfr_prec_t precision) {
  if (const auto* q = std::get_if<Rational>(&s)) return HighPrecFloat::from_rational(*q, r, precision);
  return std::get<HighPrecFloat>(s);
}

int sign(const Scalar& s) {
  return std::visit([](const auto& v) { return v.sign(); }, s);
}

std::string format_scalar(const Scalar& s, int digits) {
  if (const auto* q = std::get_if<Rational>(&s)) return q->str();
  return std::get<HighPrecFloat>(s).str(digits);
}

std::string format_decimal(const Scalar& s, int digits) {
  if (const auto* q = std::get_if<Rational>(&s)) return q->decimal(digits);
  return std::get<HighPrecFloat>(s).str(digits);
}

}  // namespace dualbound
