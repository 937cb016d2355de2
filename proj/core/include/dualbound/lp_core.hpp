#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dualbound/linear_program.hpp"
#include "dualbound/scalar.hpp"

namespace dualbound {

inline constexpr double kFloatTolerance = 1e-9;

struct FeasibilityReport {
  bool feasible = false;
  bool exact = true;
  // Set when an exact program was evaluated at a point holding floats (or a
  // mix); every value was then promoted to a directed-rounded float.
  bool promoted_to_float = false;
  Scalar tolerance = Rational(0);
  // max(0, -worst_slack)
  Scalar worst_violation = Rational(0);
  Scalar worst_slack = Rational(0);
  std::string tightest_constraint;
  std::size_t constraints_checked = 0;
  // In row order; left empty by streaming verifiers.
  std::vector<std::pair<std::string, Scalar>> per_constraint_slack;
  std::vector<std::string> sign_violations;
  Scalar objective_value = Rational(0);

  const Scalar* slack_of(const std::string& row) const;
};

struct EvaluateOptions {
  // Defaults: 0 for exact points, kFloatTolerance otherwise.
  std::optional<double> tolerance;
  bool keep_slacks = true;
};

// Slack of every row, sign restrictions, and the objective. With floats the
// row sides are rounded against feasibility, so a feasible verdict holds for
// the stored values. Throws std::invalid_argument if the point names a
// variable the program does not declare.
FeasibilityReport evaluate(const LinearProgram& p, const Point& pt, const EvaluateOptions& opts = {});

// LP dual. Min primal: >= rows give nonnegative duals, = rows free duals,
// <= rows nonpositive duals that are stored negated (so nonnegative).
// Symmetric for max. Dual variables are named after primal rows and dual
// rows after primal variables; the objective offset carries through.
LinearProgram dualize(const LinearProgram& p);

// A dual point whose budget row has been dropped; the bound is the ratio
// numerator / denominator of two linear forms evaluated at `point`.
struct RatioCertificate {
  Point point;
  std::vector<std::pair<std::string, Rational>> numerator_terms;
  std::vector<std::pair<std::string, Rational>> denominator_terms;
};

struct NormalizedCertificate {
  Point point;  // every value divided by the denominator
  Scalar numerator = Rational(0);
  Scalar denominator = Rational(0);
  // numerator / denominator. Float inputs give a lower bound (numerator
  // rounded down, denominator rounded up) whenever the numerator is >= 0.
  Scalar value = Rational(0);
};

// Throws std::domain_error when the denominator is not strictly positive.
NormalizedCertificate normalize_ratio(const RatioCertificate& rc);
// Evaluates a linear form at a point (exact if everything is exact).
Scalar evaluate_form(const std::vector<std::pair<std::string, Rational>>& terms, const Point& pt, Round r);

struct CompareOptions {
  // Collapse rows with identical canonical content (keeping the first name)
  // before comparing.
  bool dedupe_identical_rows = false;
};

// nullopt when both programs agree after each row is brought to canonical
// form (>= rows negated to <=, equality rows signed so the first coefficient
// in name order is positive); otherwise a description of the first mismatch.
std::optional<std::string> structural_difference(const LinearProgram& a, const LinearProgram& b,
                                                 const CompareOptions& opts = {});

}  // namespace dualbound
