#pragma once

#include <mpfr.h>

#include <compare>
#include <iosfwd>
#include <string>

#include "dualbound/rational.hpp"

namespace dualbound {

// Rounding direction for a single operation. Down/Up give one-sided bounds.
enum class Round { Down, Up, Nearest };

mpfr_rnd_t to_mpfr(Round r);
Round opposite(Round r);

// Working precision in significand bits. Initialised from DUALBOUND_PREC_BITS
// (default 64); never below 64.
mpfr_prec_t default_precision();
// Call before starting worker threads.
void set_default_precision(mpfr_prec_t bits);

// MPFR-backed binary float. Each value remembers the rounding direction of the
// operation that produced it, so callers can tell lower bounds from upper
// bounds. Values are copied, never shared.
class HighPrecFloat {
 public:
  HighPrecFloat() : HighPrecFloat(default_precision()) {}
  explicit HighPrecFloat(mpfr_prec_t precision);
  HighPrecFloat(long value, mpfr_prec_t precision);
  HighPrecFloat(int value) : HighPrecFloat(static_cast<long>(value), default_precision()) {}  // NOLINT(implicit)

  static HighPrecFloat from_rational(const Rational& q, Round r,
                                     mpfr_prec_t precision = default_precision());
  static HighPrecFloat from_bigint(const BigInt& z, Round r,
                                   mpfr_prec_t precision = default_precision());
  static HighPrecFloat from_double(double v, mpfr_prec_t precision = default_precision());
  static HighPrecFloat e(Round r, mpfr_prec_t precision = default_precision());
  static HighPrecFloat euler_gamma(Round r, mpfr_prec_t precision = default_precision());

  HighPrecFloat(const HighPrecFloat& o);
  HighPrecFloat(HighPrecFloat&& o) noexcept;
  HighPrecFloat& operator=(const HighPrecFloat& o);
  HighPrecFloat& operator=(HighPrecFloat&& o) noexcept;
  ~HighPrecFloat();

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get_mut() { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  Round rounding() const { return rounding_; }
  void set_rounding(Round r) { rounding_ = r; }

  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }

  double to_double(Round r = Round::Nearest) const { return mpfr_get_d(value_, to_mpfr(r)); }
  // Exact value; finite floats are dyadic rationals.
  Rational to_rational() const;
  BigInt floor() const;
  std::string str(int significant_digits = 12) const;

  HighPrecFloat operator-() const;

  friend HighPrecFloat operator+(const HighPrecFloat& a, const HighPrecFloat& b);
  friend HighPrecFloat operator-(const HighPrecFloat& a, const HighPrecFloat& b);
  friend HighPrecFloat operator*(const HighPrecFloat& a, const HighPrecFloat& b);
  friend HighPrecFloat operator/(const HighPrecFloat& a, const HighPrecFloat& b);

  friend bool operator==(const HighPrecFloat& a, const HighPrecFloat& b) {
    return mpfr_equal_p(a.value_, b.value_) != 0;
  }
  friend std::partial_ordering operator<=>(const HighPrecFloat& a, const HighPrecFloat& b);

 private:
  mpfr_t value_;
  Round rounding_ = Round::Nearest;
};

// Directed arithmetic. Result precision is the larger operand precision.
HighPrecFloat add(const HighPrecFloat& a, const HighPrecFloat& b, Round r);
HighPrecFloat sub(const HighPrecFloat& a, const HighPrecFloat& b, Round r);
HighPrecFloat mul(const HighPrecFloat& a, const HighPrecFloat& b, Round r);
HighPrecFloat div(const HighPrecFloat& a, const HighPrecFloat& b, Round r);
// a * q with q exact; rounding applies to the whole product.
HighPrecFloat mul(const HighPrecFloat& a, const Rational& q, Round r);
HighPrecFloat log(const HighPrecFloat& a, Round r);
HighPrecFloat log2(const HighPrecFloat& a, Round r);
HighPrecFloat exp(const HighPrecFloat& a, Round r);
// a * 2^e, exact barring overflow.
HighPrecFloat ldexp(const HighPrecFloat& a, long e);
const HighPrecFloat& min(const HighPrecFloat& a, const HighPrecFloat& b);

std::ostream& operator<<(std::ostream& os, const HighPrecFloat& x);

}  // namespace dualbound
