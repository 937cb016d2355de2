#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "dualbound/linear_program.hpp"
#include "dualbound/lp_core.hpp"
#include "dualbound/scalar.hpp"

// Splittable vector bin packing: d phases, phase i brings vectors v_i with
// v_i(k) = 1 for k < i, i for k = i, 0 for k > i. Phase multiplicity is 1.
namespace dualbound::vbp {

struct VbpInstance {
  long d = 1;

  // Coordinates 1..d of v_i, as a 0-based vector.
  std::vector<long> vector_of_phase(long i) const;
};

enum class CertificateKind { Optimal, Suboptimal };
std::string_view to_string(CertificateKind k);
std::optional<CertificateKind> parse_kind(std::string_view s);

// min c over c, x_i_j (j <= i). Rows z_k_j (k >= j) and y_i. With
// include_pruned the rows z_k_j for k < j are added as well.
LinearProgram primal(long d, bool include_pruned = false);
// max sum y. Budget row "c" (optional), rows x_i_j; z >= 0, y free.
LinearProgram dual(long d, bool include_budget = true);

struct VbpCertificate {
  CertificateKind kind = CertificateKind::Optimal;
  long d = 0;
  std::vector<Scalar> y;               // y[i - 1]
  std::vector<std::vector<Scalar>> z;  // z[k - 1][j - 1], j <= k

  const Scalar& z_at(long k, long j) const { return z[k - 1][j - 1]; }
  Scalar& z_at(long k, long j) { return z[k - 1][j - 1]; }
  Point point() const;
  // Numerator sum y, denominator sum z.
  RatioCertificate ratio() const;
};

// Optimal kind in HighPrecFloat (round to nearest), suboptimal in Rational.
VbpCertificate certificate(long d, CertificateKind kind);

// Largest d for which verify/bound materialize the optimal certificate.
inline constexpr long kMaterializeLimit = 300;
// Margin for optimal-kind slacks.
inline constexpr double kOptimalMargin = 1e-12;

// Evaluates the stored values against dual(d) without the budget row. Exact
// certificates go through an O(d^2) pass that keeps every slack.
FeasibilityReport verify(const VbpCertificate& cert);
// Materializes for small d; streams beyond kMaterializeLimit.
FeasibilityReport verify(long d, CertificateKind kind);

// One pass over d = 1..d_max for the optimal kind. Slacks are lower bounds
// for the real-valued assignment (logs and divisions rounded against it).
struct OptimalSweep {
  long d_max = 0;
  // Entry d - 1: worst row slack of dual(d) and the row attaining it.
  std::vector<HighPrecFloat> worst_slack;
  std::vector<std::pair<long, long>> tightest;
  // Rows x_i_j of dual(d) with i <= floor(e*j) and with i > floor(e*j).
  std::vector<std::uint64_t> rows_within_cutoff;
  std::vector<std::uint64_t> rows_beyond_cutoff;

  bool feasible(long d) const;
};
OptimalSweep sweep_optimal(long d_max);

struct VbpBound {
  Scalar exact_ratio_value = Rational(0);
  Scalar analytic_lower_bound = Rational(0);
};
VbpBound bound(long d, CertificateKind kind);

// Lower bounds on sum y / sum z of the optimal assignment at every d in ds
// (ascending), in one O(max d) pass.
std::vector<HighPrecFloat> optimal_ratio_series(std::span<const long> ds);

// H(d) / (H(d)/e + sum_{j<=d} 1/j^2), rounded down.
HighPrecFloat optimal_analytic_bound(long d);

// Offline optimum after phase j; checked against the coordinate loads.
Rational opt(long d, long j);

}  // namespace dualbound::vbp
