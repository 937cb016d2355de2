#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dualbound/high_prec.hpp"
#include "dualbound/linear_program.hpp"
#include "dualbound/lp_core.hpp"
#include "dualbound/rational.hpp"

// Online capital investment (multislope ski rental). The standard instance
// has n machines with capital i+1 and production cost 2^(-i^2), and n phases
// with cumulative demand 2^(k^2).
namespace dualbound::capital {

struct CapitalInstance {
  long n = 1;

  Rational capital(long i) const { return Rational(i + 1); }
  Rational production(long i) const { return Rational::pow2(-i * i); }
  BigInt demand(long k) const;
  // min_i capital_i + production_i * demand_k; equals k + 2.
  Rational opt(long k) const;
};

struct Machine {
  Rational capital;
  Rational production;
};

struct GenericCapitalInstance {
  std::vector<Machine> machines;
  std::vector<BigInt> demands;  // nondecreasing, positive
  std::vector<Rational> opts;   // single-machine offline optimum per phase

  // Fills opts; throws std::domain_error on an invalid instance.
  void compute_opts();
  static GenericCapitalInstance standard(long n);
  // Sections headed "machines" and "demands"; '#' starts a comment.
  // Machine lines hold "capital production"; numbers may be decimals or
  // fractions. Throws std::invalid_argument with a line number.
  static GenericCapitalInstance parse(std::string_view text);
};

LinearProgram primal(long n);
LinearProgram primal(const GenericCapitalInstance& g);
// Hand-written dual: max sum w; budget row c (optional), rows x_k_i, q_k_i.
LinearProgram dual(long n, bool include_budget = true);

struct CapitalCertificate {
  long n = 1;
  Rational epsilon;
  long cutoff = 0;                 // w_k > 0 only for k <= cutoff
  std::vector<Rational> z;         // z[k - 1] = 1 / (k (k + 1))
  std::vector<HighPrecFloat> w;    // rounded down; y_{k,i} = w_k for k <= i
  std::vector<std::string> warnings;

  // Point of dual(n, false); n^2 y entries.
  Point point() const;
  RatioCertificate ratio() const;
};

// cutoff defaults to floor(n * epsilon).
CapitalCertificate certificate(long n, const Rational& epsilon, std::optional<long> cutoff = std::nullopt);

inline constexpr double kCapitalMargin = 1e-12;

// x rows via exact suffix sums of z and directed prefix sums of w; q rows
// with k > i through pow2_exponent_compare.
FeasibilityReport verify(const CapitalCertificate& cert);
FeasibilityReport verify(long n, const Rational& epsilon);

struct CapitalBound {
  Scalar exact_ratio_value = Rational(0);
  Scalar analytic_form = Rational(0);
};
CapitalBound bound(long n, const Rational& epsilon);

// sum_{k<=n} (k+2)/(k(k+1)) = H(n) + 1 - 1/(n+1), summed exactly.
Rational denominator_exact(long n);
// e (1 - eps) ln(floor(n eps) + 1) / (H(n) + 1 - 1/(n+1)), rounded down.
HighPrecFloat closed_form_bound(const BigInt& n, const Rational& epsilon);

}  // namespace dualbound::capital
