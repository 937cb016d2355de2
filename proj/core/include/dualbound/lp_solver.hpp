#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "dualbound/linear_program.hpp"
#include "dualbound/scalar.hpp"

namespace dualbound {

enum class SolveStatus { Optimal, Infeasible, Unbounded };
std::string_view to_string(SolveStatus s);

struct Solution {
  SolveStatus status = SolveStatus::Infeasible;
  Point primal_point;
  // A point of dualize(p): named after the primal rows, in the sign
  // convention dualize uses.
  Point dual_point;
  Scalar objective = Rational(0);
  Scalar dual_objective = Rational(0);
  std::size_t pivot_count = 0;
  // Float mode only: |primal - dual objective| plus the worst row
  // violations of both points.
  std::optional<double> uncertainty;
};

class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonconvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PivotRule { Bland, DantzigWithBlandFallback };

struct ExactSolveOptions {
  std::size_t max_nonzeros = 5000;
  PivotRule rule = PivotRule::Bland;
};

struct FloatSolveOptions {
  std::size_t max_nonzeros = 4'000'000;
  // 0 picks 50 * (rows + columns).
  std::size_t max_pivots = 0;
  PivotRule rule = PivotRule::DantzigWithBlandFallback;
};

// Two-phase dense tableau simplex over rationals. Infeasible and unbounded
// programs are statuses; exceeding max_nonzeros throws SizeLimitError.
Solution solve_exact(const LinearProgram& p, const ExactSolveOptions& opts = {});

// Same algorithm over doubles; the returned points are cross-checked with
// directed-rounded evaluation. Throws NonconvergenceError when the pivot
// budget runs out.
Solution solve_float(const LinearProgram& p, double tol, const FloatSolveOptions& opts = {});

// |primal objective - dual objective|, each evaluated independently on p and
// dualize(p). Exact solutions must give 0. Throws std::domain_error unless
// the solution is optimal.
Scalar duality_gap(const LinearProgram& p, const Solution& s);

}  // namespace dualbound
