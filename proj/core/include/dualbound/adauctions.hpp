#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dualbound/linear_program.hpp"
#include "dualbound/lp_core.hpp"
#include "dualbound/rational.hpp"

// d-bounded online ad-auctions with unit budgets and unit bids. n = d^(d-1)
// bidders; phase k sells to R_k of them in groups of d.
namespace dualbound::adauctions {

struct AdInstance {
  long d = 2;
  BigInt n;
  std::vector<BigInt> R;  // R[k - 1] = d^(d-k) (d-1)^(k-1), k = 1..d

  const BigInt& r(long k) const { return R[k - 1]; }
};
AdInstance instance(long d);

// Largest d for which the full programs are generated.
inline constexpr long kMaxFullDegree = 6;

// max sum x + sum (1 - t_{d-1,i}); the constant R_d is the objective offset.
// Throws SizeLimitError beyond kMaxFullDegree.
LinearProgram primal(long d);
// One aggregate per phase for survivors and dropped bidders; its optimum
// equals the full program's (the full LP is invariant under in-group and
// between-group permutations).
LinearProgram primal_symmetric(long d);
// Hand-written dual with the repeated t_{d-1,i} row emitted once as t_{d-1}_1.
LinearProgram dual(long d);
// Dual restricted to symmetric points: variables y_k, w_k, z_k and one row
// per class of full dual rows. Small for any d.
LinearProgram class_dual(long d);

struct AdCertificate {
  long d = 2;
  std::vector<Rational> y, w, z;  // index k - 1, k = 1..d-1

  // Point of class_dual(d).
  Point class_point() const;
  // Point of dual(d); every y_{k,a} = y_k and w_{k,i} = w_k.
  Point full_point() const;
};

struct TightnessReport {
  std::size_t identities_checked = 0;
  std::optional<std::string> first_failure;
  bool holds() const { return !first_failure; }
};
TightnessReport check_tightness(const AdCertificate& cert);

// Closed forms; throws std::logic_error if a tightness identity fails.
AdCertificate certificate(long d);

struct AdBound {
  Rational certificate_value;
  Rational ratio;  // certificate_value / n
};
AdBound bound(long d);

// Exact evaluation of the certificate against class_dual(d).
FeasibilityReport verify(long d);

}  // namespace dualbound::adauctions
