#include "dualbound/rational.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace dualbound {

namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw std::invalid_argument("malformed number literal '" + std::string(whole) + "'");
  }
  return BigInt(std::string(digits), 10);
}

BigInt pow10(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

// Decimal literal: [sign] digits [. digits] [e|E [sign] digits]
Rational parse_decimal(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto epos = text.find_first_of("eE"); epos != std::string_view::npos) {
    std::string_view exp_part = text.substr(epos + 1);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    const BigInt e = parse_integer(exp_part, whole);
    if (!e.fits_slong_p()) throw std::invalid_argument("exponent out of range in '" + std::string(whole) + "'");
    exponent = exp_negative ? -e.get_si() : e.get_si();
    text = text.substr(0, epos);
  }
  std::string digits;
  long fraction_digits = 0;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("malformed number literal '" + std::string(whole) + "'");
    digits = std::string(int_part) + std::string(frac_part);
    fraction_digits = static_cast<long>(frac_part.size());
  } else {
    digits = std::string(text);
  }
  const BigInt mantissa = parse_integer(digits, whole);
  const long scale = exponent - fraction_digits;
  Rational r = scale >= 0 ? Rational(BigInt(mantissa * pow10(static_cast<unsigned long>(scale))))
                          : Rational(mantissa, pow10(static_cast<unsigned long>(-scale)));
  return negative ? -r : r;
}

}  // namespace

Rational::Rational(long num, long den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  v_ = mpq_class(num, 1);
  v_ /= den;
}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(const mpq_class& value) : v_(value) {
  if (v_.get_den() == 0) throw std::domain_error("rational with zero denominator");
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number literal");
  if (auto caret = text.find('^'); caret != std::string_view::npos) {
    const Rational base = parse(text.substr(0, caret));
    const Rational e = parse(text.substr(caret + 1));
    if (!e.is_integer() || !e.num().fits_slong_p()) {
      throw std::invalid_argument("non-integer exponent in '" + std::string(whole) + "'");
    }
    return pow(base, e.num().get_si());
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const Rational p = parse_decimal(text.substr(0, slash), whole);
    const Rational q = parse_decimal(text.substr(slash + 1), whole);
    if (q.is_zero()) throw std::domain_error("zero denominator in '" + std::string(whole) + "'");
    return p / q;
  }
  return parse_decimal(text, whole);
}

Rational Rational::from_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("non-finite double has no rational value");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), value);
  return Rational(q);
}

Rational Rational::pow(const Rational& base, long exponent) {
  if (exponent < 0) {
    if (base.is_zero()) throw std::domain_error("zero raised to a negative power");
    return Rational(1) / pow(base, -exponent);
  }
  const auto e = static_cast<unsigned long>(exponent);
  BigInt n;
  BigInt d;
  mpz_pow_ui(n.get_mpz_t(), base.v_.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), base.v_.get_den_mpz_t(), e);
  return Rational(n, d);
}

Rational Rational::pow2(long exponent) {
  BigInt p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent < 0 ? -exponent : exponent));
  return exponent >= 0 ? Rational(p) : Rational(BigInt(1), p);
}

Rational Rational::abs() const { return sign() < 0 ? -*this : *this; }

BigInt Rational::floor() const {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

BigInt Rational::ceil() const {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
  return q;
}

std::string Rational::str() const {
  if (is_integer()) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::optional<std::string> Rational::terminating_decimal() const {
  BigInt rest = v_.get_den();
  unsigned long twos = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), BigInt(2).get_mpz_t());
  unsigned long fives = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), BigInt(5).get_mpz_t());
  if (rest != 1) return std::nullopt;
  const unsigned long places = std::max(twos, fives);
  BigInt scaled = v_.get_num() * pow10(places) / v_.get_den();
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string digits = scaled.get_str();
  if (places == 0) return (negative ? "-" : "") + digits;
  if (digits.size() <= places) digits.insert(0, places - digits.size() + 1, '0');
  digits.insert(digits.size() - places, ".");
  while (digits.back() == '0') digits.pop_back();
  if (digits.back() == '.') digits.pop_back();
  return (negative ? "-" : "") + digits;
}

std::string Rational::decimal(int significant_digits) const {
  mpfr_t tmp;
  mpfr_init2(tmp, 256);
  mpfr_set_q(tmp, v_.get_mpq_t(), MPFR_RNDN);
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Rg", significant_digits, tmp);
  std::string out(buffer);
  mpfr_free_str(buffer);
  mpfr_clear(tmp);
  return out;
}

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::operator-() const {
  Rational r;
  r.v_ = -v_;
  return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace dualbound
