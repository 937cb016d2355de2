#include "dualbound/high_prec.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <ostream>
#include <string_view>

namespace dualbound {

namespace {

constexpr mpfr_prec_t kMinPrecision = 64;

mpfr_prec_t initial_precision() {
  if (const char* env = std::getenv("DUALBOUND_PREC_BITS")) {
    char* end = nullptr;
    const long bits = std::strtol(env, &end, 10);
    if (end != env && bits > 0) return std::max<mpfr_prec_t>(kMinPrecision, bits);
  }
  return kMinPrecision;
}

std::atomic<mpfr_prec_t>& precision_slot() {
  static std::atomic<mpfr_prec_t> slot{initial_precision()};
  return slot;
}

mpfr_prec_t wider(const HighPrecFloat& a, const HighPrecFloat& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

mpfr_rnd_t to_mpfr(Round r) {
  switch (r) {
    case Round::Down:
      return MPFR_RNDD;
    case Round::Up:
      return MPFR_RNDU;
    case Round::Nearest:
      break;
  }
  return MPFR_RNDN;
}

Round opposite(Round r) {
  switch (r) {
    case Round::Down:
      return Round::Up;
    case Round::Up:
      return Round::Down;
    case Round::Nearest:
      break;
  }
  return Round::Nearest;
}

mpfr_prec_t default_precision() { return precision_slot().load(std::memory_order_relaxed); }

void set_default_precision(mpfr_prec_t bits) {
  precision_slot().store(std::max(kMinPrecision, bits), std::memory_order_relaxed);
}

HighPrecFloat::HighPrecFloat(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

HighPrecFloat::HighPrecFloat(long value, mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_si(value_, value, MPFR_RNDN);
}

HighPrecFloat HighPrecFloat::from_rational(const Rational& q, Round r, mpfr_prec_t precision) {
  HighPrecFloat out(precision);
  mpfr_set_q(out.value_, q.get_mpq_t(), to_mpfr(r));
  out.rounding_ = r;
  return out;
}

HighPrecFloat HighPrecFloat::from_bigint(const BigInt& z, Round r, mpfr_prec_t precision) {
  HighPrecFloat out(precision);
  mpfr_set_z(out.value_, z.get_mpz_t(), to_mpfr(r));
  out.rounding_ = r;
  return out;
}

HighPrecFloat HighPrecFloat::from_double(double v, mpfr_prec_t precision) {
  HighPrecFloat out(std::max<mpfr_prec_t>(precision, 53));
  mpfr_set_d(out.value_, v, MPFR_RNDN);
  return out;
}

HighPrecFloat HighPrecFloat::e(Round r, mpfr_prec_t precision) {
  HighPrecFloat one(1L, precision);
  return exp(one, r);
}

HighPrecFloat HighPrecFloat::euler_gamma(Round r, mpfr_prec_t precision) {
  HighPrecFloat out(precision);
  mpfr_const_euler(out.value_, to_mpfr(r));
  out.rounding_ = r;
  return out;
}

HighPrecFloat::HighPrecFloat(const HighPrecFloat& o) : rounding_(o.rounding_) {
  mpfr_init2(value_, o.precision());
  mpfr_set(value_, o.value_, MPFR_RNDN);
}

HighPrecFloat::HighPrecFloat(HighPrecFloat&& o) noexcept : rounding_(o.rounding_) {
  mpfr_init2(value_, mpfr_get_prec(o.value_));
  mpfr_swap(value_, o.value_);
}

HighPrecFloat& HighPrecFloat::operator=(const HighPrecFloat& o) {
  if (this != &o) {
    mpfr_set_prec(value_, o.precision());
    mpfr_set(value_, o.value_, MPFR_RNDN);
    rounding_ = o.rounding_;
  }
  return *this;
}

HighPrecFloat& HighPrecFloat::operator=(HighPrecFloat&& o) noexcept {
  if (this != &o) {
    mpfr_swap(value_, o.value_);
    rounding_ = o.rounding_;
  }
  return *this;
}

HighPrecFloat::~HighPrecFloat() { mpfr_clear(value_); }

Rational HighPrecFloat::to_rational() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), value_);
  return Rational(q);
}

BigInt HighPrecFloat::floor() const {
  BigInt z;
  mpfr_get_z(z.get_mpz_t(), value_, MPFR_RNDD);
  return z;
}

std::string HighPrecFloat::str(int significant_digits) const {
  char* buffer = nullptr;
  mpfr_asprintf(&buffer, "%.*Rg", significant_digits, value_);
  std::string out(buffer);
  mpfr_free_str(buffer);
  return out;
}

HighPrecFloat HighPrecFloat::operator-() const {
  HighPrecFloat out(precision());
  mpfr_neg(out.value_, value_, MPFR_RNDN);
  out.rounding_ = opposite(rounding_);
  return out;
}

HighPrecFloat operator+(const HighPrecFloat& a, const HighPrecFloat& b) { return add(a, b, Round::Nearest); }
HighPrecFloat operator-(const HighPrecFloat& a, const HighPrecFloat& b) { return sub(a, b, Round::Nearest); }
HighPrecFloat operator*(const HighPrecFloat& a, const HighPrecFloat& b) { return mul(a, b, Round::Nearest); }
HighPrecFloat operator/(const HighPrecFloat& a, const HighPrecFloat& b) { return div(a, b, Round::Nearest); }

std::partial_ordering operator<=>(const HighPrecFloat& a, const HighPrecFloat& b) {
  if (mpfr_unordered_p(a.value_, b.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.value_, b.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

HighPrecFloat add(const HighPrecFloat& a, const HighPrecFloat& b, Round r) {
  HighPrecFloat out(wider(a, b));
  mpfr_add(out.get_mut(), a.get(), b.get(), to_mpfr(r));
  out.set_rounding(r);
  return out;
}

HighPrecFloat sub(const HighPrecFloat& a, const HighPrecFloat& b, Round r) {
  HighPrecFloat out(wider(a, b));
  mpfr_sub(out.get_mut(), a.get(), b.get(), to_mpfr(r));
  out.set_rounding(r);
  return out;
}

HighPrecFloat mul(const HighPrecFloat& a, const HighPrecFloat& b, Round r) {
  HighPrecFloat out(wider(a, b));
  mpfr_mul(out.get_mut(), a.get(), b.get(), to_mpfr(r));
  out.set_rounding(r);
  return out;
}

HighPrecFloat div(const HighPrecFloat& a, const HighPrecFloat& b, Round r) {
  HighPrecFloat out(wider(a, b));
  mpfr_div(out.get_mut(), a.get(), b.get(), to_mpfr(r));
  out.set_rounding(r);
  return out;
}

HighPrecFloat mul(const HighPrecFloat& a, const Rational& q, Round r) {
  // (a * num) / den with both steps rounded the same way: monotone in the
  // intermediate because den > 0, so the direction survives.
  HighPrecFloat out(a.precision());
  mpfr_mul_z(out.get_mut(), a.get(), q.raw().get_num_mpz_t(), to_mpfr(r));
  mpfr_div_z(out.get_mut(), out.get(), q.raw().get_den_mpz_t(), to_mpfr(r));
  out.set_rounding(r);
  return out;
}

HighPrecFloat log(const HighPrecFloat& a, Round r) {
  HighPrecFloat out(a.precision());
  mpfr_log(out.get_mut(), a.get(), to_mpfr(r));
  out.set_rounding(r);
  return out;
}

HighPrecFloat log2(const HighPrecFloat& a, Round r) {
  HighPrecFloat out(a.precision());
  mpfr_log2(out.get_mut(), a.get(), to_mpfr(r));
  out.set_rounding(r);
  return out;
}

HighPrecFloat exp(const HighPrecFloat& a, Round r) {
  HighPrecFloat out(a.precision());
  mpfr_exp(out.get_mut(), a.get(), to_mpfr(r));
  out.set_rounding(r);
  return out;
}

HighPrecFloat ldexp(const HighPrecFloat& a, long e) {
  HighPrecFloat out(a.precision());
  mpfr_mul_2si(out.get_mut(), a.get(), e, MPFR_RNDN);
  out.set_rounding(a.rounding());
  return out;
}

const HighPrecFloat& min(const HighPrecFloat& a, const HighPrecFloat& b) { return (b < a) ? b : a; }

std::ostream& operator<<(std::ostream& os, const HighPrecFloat& x) { return os << x.str(); }

}  // namespace dualbound
