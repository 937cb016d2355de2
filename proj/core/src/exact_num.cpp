#include "dualbound/exact_num.hpp"

#include <stdexcept>
#include <string>

namespace dualbound {

namespace {

constexpr std::uint64_t kDirectSumLimit = 1'000'000;

// Sum of 1/k for k = 1..n, every step rounded in direction r.
HighPrecFloat harmonic_direct(std::uint64_t n, Round r, mpfr_prec_t precision) {
  HighPrecFloat sum(0L, precision);
  HighPrecFloat term(precision);
  const mpfr_rnd_t rnd = to_mpfr(r);
  for (std::uint64_t k = 1; k <= n; ++k) {
    mpfr_set_ui(term.get_mut(), 1, MPFR_RNDN);
    mpfr_div_ui(term.get_mut(), term.get(), static_cast<unsigned long>(k), rnd);
    mpfr_add(sum.get_mut(), sum.get(), term.get(), rnd);
  }
  sum.set_rounding(r);
  return sum;
}

// H(n) = ln n + gamma + 1/(2n) - 1/(12n^2) + 1/(120n^4) - t, 0 < t < 1/(252 n^6).
HighPrecFloat harmonic_asymptotic(const BigInt& n, Round r, mpfr_prec_t precision) {
  const Round opp = opposite(r);
  const mpfr_prec_t work = precision + 32;
  const HighPrecFloat nf = HighPrecFloat::from_bigint(n, Round::Nearest, work);
  const bool n_exact = HighPrecFloat::from_bigint(n, Round::Down, work) ==
                       HighPrecFloat::from_bigint(n, Round::Up, work);
  if (!n_exact) {
    // Bracketing n itself would complicate every term; the remainder terms are
    // far below the working precision at that size, so widen instead.
    return harmonic_asymptotic(n, r, precision + mpz_sizeinbase(n.get_mpz_t(), 2));
  }
  const HighPrecFloat one(1L, work);
  HighPrecFloat acc = add(log(nf, r), HighPrecFloat::euler_gamma(r, work), r);
  HighPrecFloat inv_n = div(one, nf, r);
  HighPrecFloat inv_n_opp = div(one, nf, opp);
  acc = add(acc, mul(inv_n, HighPrecFloat::from_rational(Rational(1, 2), r, work), r), r);
  HighPrecFloat inv_n2_opp = mul(inv_n_opp, inv_n_opp, opp);
  acc = sub(acc, mul(inv_n2_opp, Rational(1, 12), opp), r);
  HighPrecFloat inv_n4 = mul(mul(inv_n, inv_n, r), mul(inv_n, inv_n, r), r);
  acc = add(acc, mul(inv_n4, Rational(1, 120), r), r);
  if (r == Round::Down) {
    HighPrecFloat inv_n6 = mul(inv_n4, mul(inv_n_opp, inv_n_opp, opp), opp);
    acc = sub(acc, mul(inv_n6, Rational(1, 252), Round::Up), Round::Down);
  }
  HighPrecFloat out(precision);
  mpfr_set(out.get_mut(), acc.get(), to_mpfr(r));
  out.set_rounding(r);
  return out;
}

template <class Scalar, class Ops>
Claim1Report<Scalar> claim1_impl(std::span<const Scalar> f, std::span<const Scalar> fprime, Ops ops) {
  if (f.empty() || f.size() != fprime.size()) {
    throw std::invalid_argument("claim1_check: f and f' must cover the same non-empty index range");
  }
  Claim1Report<Scalar> report;
  report.monotone = true;
  for (std::size_t r = 0; r + 1 < fprime.size(); ++r) {
    if (fprime[r + 1] > fprime[r]) {
      report.monotone = false;
      report.first_increase = r;
      break;
    }
  }
  Scalar sum_left = ops.zero();   // sum f'(r),   r = j..i-1
  Scalar sum_right = ops.zero();  // sum f'(r+1), r = j..i-1
  for (std::size_t r = 0; r + 1 < fprime.size(); ++r) {
    sum_left = ops.add(sum_left, fprime[r], true);
    sum_right = ops.add(sum_right, fprime[r + 1], false);
  }
  const Scalar diff_low = ops.sub(f.back(), f.front(), /*up=*/false);
  const Scalar diff_high = ops.sub(f.back(), f.front(), /*up=*/true);
  report.lower_slack = ops.sub(diff_low, sum_right, false);
  report.upper_slack = ops.sub(sum_left, diff_high, false);
  if (report.monotone) {
    report.inequalities_checked = true;
    report.lower_holds = ops.nonnegative(report.lower_slack);
    report.upper_holds = ops.nonnegative(report.upper_slack);
  }
  return report;
}

struct ExactOps {
  Rational zero() const { return {}; }
  Rational add(const Rational& a, const Rational& b, bool) const { return a + b; }
  Rational sub(const Rational& a, const Rational& b, bool) const { return a - b; }
  bool nonnegative(const Rational& a) const { return a.sign() >= 0; }
};

struct DirectedOps {
  mpfr_prec_t precision;
  HighPrecFloat tolerance;
  // Running sums that feed a subtrahend round up, the rest round down, so
  // every slack is a lower bound. `up` selects the direction per call.
  HighPrecFloat zero() const { return HighPrecFloat(0L, precision); }
  HighPrecFloat add(const HighPrecFloat& a, const HighPrecFloat& b, bool for_upper_sum) const {
    // sum_left feeds upper_slack as a minuend (round down); sum_right feeds
    // lower_slack as a subtrahend (round up).
    return dualbound::add(a, b, for_upper_sum ? Round::Down : Round::Up);
  }
  HighPrecFloat sub(const HighPrecFloat& a, const HighPrecFloat& b, bool up) const {
    return dualbound::sub(a, b, up ? Round::Up : Round::Down);
  }
  bool nonnegative(const HighPrecFloat& a) const { return dualbound::add(a, tolerance, Round::Down).sign() >= 0; }
};

}  // namespace

Rational harmonic_exact(std::uint64_t n) {
  if (n == 0) throw std::domain_error("harmonic: n must be at least 1");
  // Accumulate as p/q over integers and canonicalise once.
  BigInt p = 0;
  BigInt q = 1;
  for (std::uint64_t k = 1; k <= n; ++k) {
    const BigInt kk(static_cast<unsigned long>(k));
    p = p * kk + q;
    q *= kk;
    if ((k & 63U) == 0) {
      BigInt g;
      mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
      p /= g;
      q /= g;
    }
  }
  return Rational(p, q);
}

HighPrecFloat harmonic_float(std::uint64_t n, Round r, mpfr_prec_t precision) {
  if (n == 0) throw std::domain_error("harmonic: n must be at least 1");
  if (n <= kDirectSumLimit) return harmonic_direct(n, r, precision);
  return harmonic_asymptotic(BigInt(std::to_string(n)), r, precision);
}

HighPrecFloat harmonic_float(const BigInt& n, Round r, mpfr_prec_t precision) {
  if (n <= 0) throw std::domain_error("harmonic: n must be at least 1");
  if (n <= static_cast<unsigned long>(kDirectSumLimit)) return harmonic_direct(n.get_ui(), r, precision);
  return harmonic_asymptotic(n, r, precision);
}

std::strong_ordering pow2_exponent_compare(const Rational& a, const Rational& b, long e) {
  if (a.sign() <= 0 || b.sign() <= 0) {
    throw std::domain_error("pow2_exponent_compare: operands must be positive");
  }
  constexpr mpfr_prec_t kPrec = 96;
  // log2(a) - log2(b) bracketed in [lo, hi].
  const HighPrecFloat lo = sub(log2(HighPrecFloat::from_rational(a, Round::Down, kPrec), Round::Down),
                               log2(HighPrecFloat::from_rational(b, Round::Up, kPrec), Round::Up), Round::Down);
  const HighPrecFloat hi = sub(log2(HighPrecFloat::from_rational(a, Round::Up, kPrec), Round::Up),
                               log2(HighPrecFloat::from_rational(b, Round::Down, kPrec), Round::Down), Round::Up);
  const HighPrecFloat target(e, kPrec);
  if (hi < target) return std::strong_ordering::less;
  if (lo > target) return std::strong_ordering::greater;
  // a.num * b.den  vs  b.num * a.den * 2^e
  BigInt lhs = a.num() * b.den();
  BigInt rhs = b.num() * a.den();
  if (e >= 0) {
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  }
  const int c = cmp(lhs, rhs);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

BigInt floor_e_times(const BigInt& j) {
  if (j < 0) throw std::domain_error("floor_e_times: j must be nonnegative");
  if (j == 0) return 0;
  mpfr_prec_t prec = 64 + static_cast<mpfr_prec_t>(mpz_sizeinbase(j.get_mpz_t(), 2));
  for (;; prec *= 2) {
    const HighPrecFloat jd = HighPrecFloat::from_bigint(j, Round::Down, prec);
    const HighPrecFloat ju = HighPrecFloat::from_bigint(j, Round::Up, prec);
    const BigInt lo = mul(HighPrecFloat::e(Round::Down, prec), jd, Round::Down).floor();
    const BigInt hi = mul(HighPrecFloat::e(Round::Up, prec), ju, Round::Up).floor();
    if (lo == hi) return lo;
  }
}

long floor_e_times(long j) { return floor_e_times(BigInt(j)).get_si(); }

long ceil_div_e(long k) {
  if (k <= 0) return 1;
  // floor(e*j) >= k  <=>  e*j >= k  <=>  j >= k/e (k integer, e*j never integral).
  long j = static_cast<long>(static_cast<double>(k) / 2.718281828459045);
  if (j < 1) j = 1;
  while (j > 1 && floor_e_times(j - 1) >= k) --j;
  while (floor_e_times(j) < k) ++j;
  return j;
}

Claim1Report<Rational> claim1_check(std::span<const Rational> f, std::span<const Rational> fprime) {
  return claim1_impl<Rational>(f, fprime, ExactOps{});
}

Claim1Report<HighPrecFloat> claim1_check(std::span<const HighPrecFloat> f, std::span<const HighPrecFloat> fprime,
                                         double tolerance) {
  mpfr_prec_t precision = default_precision();
  for (const auto& v : f) precision = std::max(precision, v.precision());
  return claim1_impl<HighPrecFloat>(f, fprime,
                                    DirectedOps{precision, HighPrecFloat::from_double(tolerance, precision)});
}

}  // namespace dualbound
