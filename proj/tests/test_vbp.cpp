#include <gtest/gtest.h>

#include <cmath>

#include "dualbound/vbp.hpp"
#include "dualbound/lp_core.hpp"
#include "dualbound/lp_solver.hpp"
#include "dualbound/exact_num.hpp"

using namespace dualbound;
using vbp::CertificateKind;

namespace {

const Rational& exact(const Scalar& s) { return std::get<Rational>(s); }

// Ratio of the optimal assignment, mpmath at 50 digits.
const std::pair<long, double> kOptimalRatio[] = {
    {1, 1.0},
    {2, 1.1306136054915277988},
    {3, 1.219065858833510136},
    {5, 1.3243843435709614287},
    {10, 1.4602678891384881913},
    {50, 1.7163319974415400479},
    {100, 1.8014794793405347241},
};

const std::pair<long, double> kAnalytic[] = {
    {1, 0.73105857863000487925},
    {10, 1.1148312703135040828},
    {1000, 1.7021387783082889386},
    {1000000, 2.0739632093616631862},
};

}  // namespace

TEST(VbpInstance, PhaseVectors) {
  vbp::VbpInstance inst{4};
  EXPECT_EQ(inst.vector_of_phase(1), (std::vector<long>{1, 0, 0, 0}));
  EXPECT_EQ(inst.vector_of_phase(3), (std::vector<long>{1, 1, 3, 0}));
  EXPECT_THROW(inst.vector_of_phase(5), std::out_of_range);
  EXPECT_THROW(vbp::primal(0), std::domain_error);
}

TEST(VbpPrograms, Shapes) {
  for (long d = 1; d <= 7; ++d) {
    const auto p = vbp::primal(d);
    const long pairs = d * (d + 1) / 2;
    EXPECT_EQ(static_cast<long>(p.variables().size()), pairs + 1);
    EXPECT_EQ(static_cast<long>(p.constraints().size()), pairs + d);
    EXPECT_EQ(static_cast<long>(vbp::primal(d, true).constraints().size()), d * d + d);
  }
  EXPECT_TRUE(vbp::dual(3).find_constraint("c").has_value());
  EXPECT_FALSE(vbp::dual(3, false).find_constraint("c").has_value());
}

TEST(VbpPrograms, HandDualMatchesDualize) {
  for (long d = 1; d <= 6; ++d) {
    EXPECT_EQ(structural_difference(dualize(vbp::primal(d)), vbp::dual(d)), std::nullopt) << d;
  }
}

TEST(VbpOpt, MatchesCoordinateLoads) {
  // After phase j the coordinate loads are j (coordinate j) and the phase
  // count on earlier coordinates.
  EXPECT_EQ(vbp::opt(5, 1), Rational(1));
  EXPECT_EQ(vbp::opt(5, 3), Rational(3));
}

TEST(VbpSuboptimal, ExactValuesAndTightness) {
  for (long d = 1; d <= 40; ++d) {
    const auto cert = vbp::certificate(d, CertificateKind::Suboptimal);
    const auto r = vbp::verify(cert);
    ASSERT_TRUE(r.feasible) << d;
    EXPECT_TRUE(r.exact);
    for (const auto& [row, slack] : r.per_constraint_slack) EXPECT_EQ(exact(slack), Rational(0)) << row;
    const auto b = vbp::bound(d, CertificateKind::Suboptimal);
    EXPECT_EQ(exact(b.exact_ratio_value), Rational(2 * d, d + 1));
    EXPECT_EQ(exact(b.analytic_lower_bound), Rational(2 * d, d + 1));
  }
}

TEST(VbpSuboptimal, StructuredPassAgreesWithGenericEvaluation) {
  for (long d = 1; d <= 25; ++d) {
    auto cert = vbp::certificate(d, CertificateKind::Suboptimal);
    if (d >= 3) {
      cert.z_at(d, 2) = Rational(-1, 7);
      cert.y[1] = Rational(5, 3);
    }
    const auto fast = vbp::verify(cert);
    const auto slow = evaluate(vbp::dual(d, false), cert.point());
    EXPECT_EQ(fast.feasible, slow.feasible) << d;
    EXPECT_EQ(fast.per_constraint_slack, slow.per_constraint_slack) << d;
    EXPECT_EQ(fast.sign_violations, slow.sign_violations) << d;
    EXPECT_EQ(fast.tightest_constraint, slow.tightest_constraint) << d;
    EXPECT_EQ(exact(fast.objective_value), exact(slow.objective_value)) << d;
  }
}

TEST(VbpSuboptimal, StreamingMatchesMaterialized) {
  for (long d : {299L, 301L, 1000L}) {
    const auto r = vbp::verify(d, CertificateKind::Suboptimal);
    EXPECT_TRUE(r.feasible) << d;
    EXPECT_EQ(exact(r.worst_slack), Rational(0));
    EXPECT_EQ(r.constraints_checked, static_cast<std::size_t>(d * (d + 1) / 2));
  }
}

TEST(VbpSuboptimal, CertificateValueBoundsLpOptimum) {
  for (long d = 1; d <= 6; ++d) {
    const Rational lp = exact(solve_exact(vbp::primal(d)).objective);
    EXPECT_LE(Rational(2 * d, d + 1), lp) << d;
  }
}

TEST(VbpOptimal, RatioMatchesOracle) {
  for (const auto& [d, expected] : kOptimalRatio) {
    const auto b = vbp::bound(d, CertificateKind::Optimal);
    EXPECT_NEAR(to_double(b.exact_ratio_value), expected, 1e-14) << d;
  }
  for (const auto& [d, expected] : kAnalytic) {
    // 10^6 terms summed at 64 bits drift by a few ulps.
    EXPECT_NEAR(vbp::optimal_analytic_bound(d).to_double(), expected, 1e-13) << d;
    EXPECT_LE(vbp::optimal_analytic_bound(d).to_double(), expected + 1e-15);
  }
}

TEST(VbpOptimal, SeriesAgreesWithMaterializedRatio) {
  const std::vector<long> ds = {1, 2, 3, 10, 100, 300};
  const auto series = vbp::optimal_ratio_series(ds);
  ASSERT_EQ(series.size(), ds.size());
  for (std::size_t t = 0; t < ds.size(); ++t) {
    const double m = to_double(vbp::bound(ds[t], CertificateKind::Optimal).exact_ratio_value);
    EXPECT_NEAR(series[t].to_double(), m, 1e-13) << ds[t];
  }
}

TEST(VbpOptimal, BoundsTheLpOptimum) {
  for (long d = 1; d <= 6; ++d) {
    const double lp = to_double(solve_exact(vbp::primal(d)).objective);
    EXPECT_LE(to_double(vbp::bound(d, CertificateKind::Optimal).exact_ratio_value), lp + 1e-12) << d;
  }
}

TEST(VbpOptimal, MaterializedVerification) {
  for (long d : {1L, 2L, 5L, 17L, 60L}) {
    const auto r = vbp::verify(d, CertificateKind::Optimal);
    EXPECT_TRUE(r.feasible) << d;
    EXPECT_FALSE(r.exact);
    EXPECT_GE(to_double(r.worst_slack), -1e-12);
  }
}

TEST(VbpOptimal, SweepCoversBothBranches) {
  const auto sweep = vbp::sweep_optimal(400);
  for (long d = 1; d <= 400; ++d) ASSERT_TRUE(sweep.feasible(d)) << d;
  EXPECT_GT(sweep.rows_within_cutoff[399], 0u);
  EXPECT_GT(sweep.rows_beyond_cutoff[399], 0u);
  EXPECT_EQ(sweep.rows_within_cutoff[0] + sweep.rows_beyond_cutoff[0], 1u);
  // Streaming verify at d > 300 uses the same pass.
  EXPECT_TRUE(vbp::verify(350, CertificateKind::Optimal).feasible);
}

TEST(VbpOptimal, BranchValues) {
  const auto cert = vbp::certificate(10, CertificateKind::Optimal);
  const long cut = floor_e_times(3L);  // 8
  EXPECT_GT(to_double(cert.z_at(cut, 3)), 0.0);
  EXPECT_EQ(to_double(cert.z_at(cut + 1, 3)), 0.0);
  EXPECT_NEAR(to_double(cert.z_at(4, 2)), (1.0 - std::log(2.0)) / 16.0, 1e-17);
}

TEST(VbpOptimal, DroppedBudgetRecoveredAfterScaling) {
  const auto n = normalize_ratio(vbp::certificate(7, CertificateKind::Optimal).ratio());
  const auto r = evaluate(vbp::dual(7, true), n.point, {.tolerance = 1e-12, .keep_slacks = true});
  EXPECT_TRUE(r.feasible);
  EXPECT_NEAR(to_double(*r.slack_of("c")), 0.0, 1e-15);
}

TEST(VbpKind, Parsing) {
  EXPECT_EQ(vbp::parse_kind("optimal"), CertificateKind::Optimal);
  EXPECT_EQ(vbp::parse_kind("suboptimal"), CertificateKind::Suboptimal);
  EXPECT_EQ(vbp::parse_kind("other"), std::nullopt);
}
