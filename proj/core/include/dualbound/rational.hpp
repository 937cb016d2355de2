#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace dualbound {

using BigInt = mpz_class;

// Exact fraction over GMP integers. Always canonical: gcd(|num|, den) = 1 and
// den > 0. Division by zero throws std::domain_error.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : v_(value) {}                    // NOLINT(implicit)
  Rational(int value) : v_(static_cast<long>(value)) {}  // NOLINT(implicit)
  Rational(long num, long den);
  explicit Rational(const BigInt& value) : v_(value) {}
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(const mpq_class& value);

  // Accepts "7", "-3/4", "0.125", "1.5e-3", "2^-9" style literals.
  static Rational parse(std::string_view text);
  // Exact value of a finite double.
  static Rational from_double(double value);
  static Rational pow(const Rational& base, long exponent);
  static Rational pow2(long exponent);

  BigInt num() const { return v_.get_num(); }
  BigInt den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }
  mpq_srcptr get_mpq_t() const { return v_.get_mpq_t(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  Rational abs() const;
  BigInt floor() const;
  BigInt ceil() const;

  double to_double() const { return v_.get_d(); }
  // "p/q", or "p" when the denominator is 1.
  std::string str() const;
  // Exact decimal expansion when the denominator has only the factors 2 and 5.
  std::optional<std::string> terminating_decimal() const;
  // Decimal rendering with the given number of significant digits.
  std::string decimal(int significant_digits) const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace dualbound
