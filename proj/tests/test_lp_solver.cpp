#include <gtest/gtest.h>

#include "dualbound/lp_solver.hpp"
#include "dualbound/lp_core.hpp"
#include "dualbound/vbp.hpp"
#include "dualbound/capital.hpp"
#include "dualbound/adauctions.hpp"

using namespace dualbound;

namespace {

const Rational& exact(const Scalar& s) { return std::get<Rational>(s); }

// Values from an independent HiGHS run, 12 digits.
constexpr double kVbpOptima[] = {1.0, 4.0 / 3.0, 1.5, 1.62962962963, 1.713286713287,
                                 1.777777777778, 1.827645051195, 1.8688};
constexpr double kCapitalOptima[] = {1.0, 27.0 / 26.0, 1.190530252691, 1.284251475232, 1.360115146799};

}  // namespace

TEST(SolveExact, TextbookMaximum) {
  // max 3a + 5b : a <= 4, 2b <= 12, 3a + 2b <= 18  ->  36 at (2, 6)
  LinearProgram p(Sense::Maximize);
  const auto a = p.add_variable("a");
  const auto b = p.add_variable("b");
  p.set_objective({{a, Rational(3)}, {b, Rational(5)}});
  p.add_constraint("r1", {{a, Rational(1)}}, Relation::LessEqual, Rational(4));
  p.add_constraint("r2", {{b, Rational(2)}}, Relation::LessEqual, Rational(12));
  p.add_constraint("r3", {{a, Rational(3)}, {b, Rational(2)}}, Relation::LessEqual, Rational(18));
  const Solution s = solve_exact(p);
  ASSERT_EQ(s.status, SolveStatus::Optimal);
  EXPECT_EQ(exact(s.objective), Rational(36));
  EXPECT_EQ(exact(*s.primal_point.find("a")), Rational(2));
  EXPECT_EQ(exact(*s.primal_point.find("b")), Rational(6));
  EXPECT_EQ(exact(s.dual_objective), Rational(36));
  EXPECT_EQ(exact(duality_gap(p, s)), Rational(0));
  EXPECT_TRUE(evaluate(dualize(p), s.dual_point).feasible);
}

TEST(SolveExact, StatusesAndFreeVariables) {
  LinearProgram inf(Sense::Minimize);
  const auto x = inf.add_variable("x");
  inf.set_objective({{x, Rational(1)}});
  inf.add_constraint("lo", {{x, Rational(1)}}, Relation::GreaterEqual, Rational(2));
  inf.add_constraint("hi", {{x, Rational(1)}}, Relation::LessEqual, Rational(1));
  EXPECT_EQ(solve_exact(inf).status, SolveStatus::Infeasible);

  LinearProgram unb(Sense::Maximize);
  const auto u = unb.add_variable("u");
  unb.set_objective({{u, Rational(1)}});
  unb.add_constraint("r", {{u, Rational(-1)}}, Relation::LessEqual, Rational(1));
  EXPECT_EQ(solve_exact(unb).status, SolveStatus::Unbounded);
  EXPECT_THROW(duality_gap(unb, solve_exact(unb)), std::domain_error);

  LinearProgram fr(Sense::Minimize);
  const auto f = fr.add_variable("f", VarSign::Free);
  fr.set_objective({{f, Rational(1)}}, Rational(1, 2));
  fr.add_constraint("r", {{f, Rational(2)}}, Relation::GreaterEqual, Rational(-3));
  const Solution s = solve_exact(fr);
  ASSERT_EQ(s.status, SolveStatus::Optimal);
  EXPECT_EQ(exact(s.objective), Rational(-1));
  EXPECT_EQ(exact(*s.primal_point.find("f")), Rational(-3, 2));
}

TEST(SolveExact, DegenerateCycleProneProgram) {
  // Beale's example: cycles under Dantzig's rule without anti-cycling.
  LinearProgram p(Sense::Minimize);
  const auto x1 = p.add_variable("x1"), x2 = p.add_variable("x2"), x3 = p.add_variable("x3"),
             x4 = p.add_variable("x4");
  p.set_objective({{x1, Rational(-3, 4)}, {x2, Rational(150)}, {x3, Rational(-1, 50)}, {x4, Rational(6)}});
  p.add_constraint("r1", {{x1, Rational(1, 4)}, {x2, Rational(-60)}, {x3, Rational(-1, 25)}, {x4, Rational(9)}},
                   Relation::LessEqual, Rational(0));
  p.add_constraint("r2", {{x1, Rational(1, 2)}, {x2, Rational(-90)}, {x3, Rational(-1, 50)}, {x4, Rational(3)}},
                   Relation::LessEqual, Rational(0));
  p.add_constraint("r3", {{x3, Rational(1)}}, Relation::LessEqual, Rational(1));
  for (PivotRule rule : {PivotRule::Bland, PivotRule::DantzigWithBlandFallback}) {
    const Solution s = solve_exact(p, {.max_nonzeros = 5000, .rule = rule});
    ASSERT_EQ(s.status, SolveStatus::Optimal);
    EXPECT_EQ(exact(s.objective), Rational(-1, 20));
  }
}

TEST(SolveExact, VbpOptimaMatchOracle) {
  EXPECT_EQ(exact(solve_exact(vbp::primal(2)).objective), Rational(4, 3));
  EXPECT_EQ(exact(solve_exact(vbp::primal(3)).objective), Rational(3, 2));
  for (long d = 1; d <= 6; ++d) {
    const auto p = vbp::primal(d);
    const Solution s = solve_exact(p);
    ASSERT_EQ(s.status, SolveStatus::Optimal);
    EXPECT_NEAR(to_double(s.objective), kVbpOptima[d - 1], 1e-11) << d;
    EXPECT_EQ(exact(duality_gap(p, s)), Rational(0));
    // The omitted rows never bind.
    EXPECT_EQ(exact(solve_exact(vbp::primal(d, true)).objective), exact(s.objective)) << d;
  }
}

TEST(SolveExact, CapitalOptimaMatchOracle) {
  EXPECT_EQ(exact(solve_exact(capital::primal(1)).objective), Rational(1));
  EXPECT_EQ(exact(solve_exact(capital::primal(2)).objective), Rational(27, 26));
  for (long n = 3; n <= 5; ++n) {
    const Solution s = solve_exact(capital::primal(n));
    EXPECT_NEAR(to_double(s.objective), kCapitalOptima[n - 1], 1e-11) << n;
  }
}

TEST(SolveExact, AdAuctionOptima) {
  EXPECT_EQ(exact(solve_exact(adauctions::primal(2)).objective), Rational(3, 2));
  EXPECT_EQ(exact(solve_exact(adauctions::primal(3)).objective), Rational(19, 3));
  EXPECT_EQ(exact(solve_exact(adauctions::primal_symmetric(5)).objective), Rational(2101, 5));
}

TEST(SolveExact, NonzeroGuardrail) {
  EXPECT_THROW(solve_exact(vbp::primal(60)), SizeLimitError);
  EXPECT_THROW(adauctions::primal(7), SizeLimitError);
}

TEST(SolveFloat, AgreesWithExactAndReportsUncertainty) {
  for (long d = 1; d <= 8; ++d) {
    const auto p = vbp::primal(d);
    const Solution s = solve_float(p, 1e-9);
    ASSERT_EQ(s.status, SolveStatus::Optimal);
    EXPECT_NEAR(to_double(s.objective), kVbpOptima[d - 1], 1e-9) << d;
    ASSERT_TRUE(s.uncertainty.has_value());
    EXPECT_LT(*s.uncertainty, 1e-8);
    EXPECT_LT(to_double(duality_gap(p, s)), 1e-8);
  }
  EXPECT_THROW(solve_float(vbp::primal(2), 0.0), std::invalid_argument);
}

TEST(SolveFloat, LargerVbpStaysBelowE) {
  const Solution s = solve_float(vbp::primal(30), 1e-9);
  ASSERT_EQ(s.status, SolveStatus::Optimal);
  EXPECT_GT(to_double(s.objective), 2.0);
  EXPECT_LT(to_double(s.objective), 2.718281828459045);
}

TEST(SolveFloat, PivotBudget) {
  FloatSolveOptions o;
  o.max_pivots = 1;
  EXPECT_THROW(solve_float(vbp::primal(6), 1e-9, o), NonconvergenceError);
}

TEST(DualityGap, ExactPrimalAndDualSolvesAgree) {
  for (long n = 1; n <= 3; ++n) {
    const Solution sp = solve_exact(capital::primal(n));
    const Solution sd = solve_exact(capital::dual(n));
    EXPECT_EQ(exact(sp.objective), exact(sd.objective)) << n;
  }
}
