#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>

#include "dualbound/high_prec.hpp"
#include "dualbound/rational.hpp"

namespace dualbound {

// H(n) = 1 + 1/2 + ... + 1/n. Throws std::domain_error for n = 0.
Rational harmonic_exact(std::uint64_t n);

// Directed bound on H(n): summed term by term for n <= 10^6, asymptotic
// expansion with a bounded remainder beyond that.
HighPrecFloat harmonic_float(std::uint64_t n, Round r, mpfr_prec_t precision = default_precision());
HighPrecFloat harmonic_float(const BigInt& n, Round r, mpfr_prec_t precision = default_precision());

// Orders a against b * 2^e without forming 2^e. Log-domain first; exact
// integer comparison only when the float interval straddles e.
// Throws std::domain_error unless a > 0 and b > 0.
std::strong_ordering pow2_exponent_compare(const Rational& a, const Rational& b, long e);

// floor(e * j) for j >= 0. e is irrational, so e*j is never an integer for
// j > 0; precision is raised until both directed roundings agree.
BigInt floor_e_times(const BigInt& j);
long floor_e_times(long j);
// Smallest j >= 1 with floor(e * j) >= k, i.e. ceil(k / e).
long ceil_div_e(long k);

template <class Scalar>
struct Claim1Report {
  // f' non-increasing over the supplied index range.
  bool monotone = false;
  // Offset r - j of the first step with f'(r+1) > f'(r).
  std::optional<std::size_t> first_increase;
  // Both inequalities are only asserted when monotone holds.
  bool inequalities_checked = false;
  bool lower_holds = false;
  bool upper_holds = false;
  // (f(i) - f(j)) - sum f'(r+1)  and  sum f'(r) - (f(i) - f(j)).
  // Computed even when the precondition fails, for diagnostics.
  Scalar lower_slack{};
  Scalar upper_slack{};

  bool passed() const { return monotone && lower_holds && upper_holds; }
};

// Discrete integral bounds for a function whose derivative is non-increasing:
//   sum_{r=j}^{i-1} f'(r+1) <= f(i) - f(j) <= sum_{r=j}^{i-1} f'(r)
// f[0..] and fprime[0..] hold the values at j, j+1, ..., i.
Claim1Report<Rational> claim1_check(std::span<const Rational> f, std::span<const Rational> fprime);
// Float version: slacks are rounded down, so a passing verdict is sound for
// the supplied values. `tolerance` absorbs error already present in the inputs.
Claim1Report<HighPrecFloat> claim1_check(std::span<const HighPrecFloat> f,
                                         std::span<const HighPrecFloat> fprime,
                                         double tolerance = 0.0);

}  // namespace dualbound
