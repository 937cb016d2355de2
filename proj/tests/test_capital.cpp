#include <gtest/gtest.h>

#include "dualbound/capital.hpp"
#include "dualbound/exact_num.hpp"
#include "dualbound/lp_core.hpp"
#include "dualbound/lp_solver.hpp"

using namespace dualbound;

namespace {

const Rational& exact(const Scalar& s) { return std::get<Rational>(s); }

}  // namespace

TEST(CapitalInstance, OptIsKPlusTwo) {
  capital::CapitalInstance inst{6};
  for (long k = 1; k <= 6; ++k) EXPECT_EQ(inst.opt(k), Rational(k + 2));
  EXPECT_EQ(inst.demand(3), BigInt(512));
  auto g = capital::GenericCapitalInstance::standard(4);
  EXPECT_EQ(g.opts[3], Rational(6));
}

TEST(CapitalInstance, ParseGenericFile) {
  const auto g = capital::GenericCapitalInstance::parse(
      "# two machines\nmachines\n1 1\n2 1/2\ndemands\n1\n4\n");
  ASSERT_EQ(g.machines.size(), 2u);
  EXPECT_EQ(g.machines[1].production, Rational(1, 2));
  EXPECT_EQ(g.opts[1], Rational(4));
  EXPECT_THROW(capital::GenericCapitalInstance::parse("machines\n1\n"), std::invalid_argument);
  EXPECT_THROW(capital::GenericCapitalInstance::parse("demands\n4\n2\nmachines\n1 1\n"), std::exception);
  const auto p = capital::primal(g);
  EXPECT_EQ(solve_exact(p).status, SolveStatus::Optimal);
}

TEST(CapitalPrograms, GenericMatchesStandard) {
  for (long n = 1; n <= 4; ++n) {
    EXPECT_EQ(structural_difference(capital::primal(n), capital::primal(capital::GenericCapitalInstance::standard(n))),
              std::nullopt);
  }
}

TEST(CapitalPrograms, HandDualMatchesDualize) {
  for (long n = 1; n <= 4; ++n) {
    EXPECT_EQ(structural_difference(dualize(capital::primal(n)), capital::dual(n)), std::nullopt) << n;
  }
}

TEST(CapitalCertificate, Denominator) {
  EXPECT_EQ(capital::denominator_exact(4), Rational(173, 60));
  for (long n = 1; n <= 30; ++n)
    EXPECT_EQ(capital::denominator_exact(n), harmonic_exact(n) + Rational(1) - Rational(1, n + 1));
}

TEST(CapitalCertificate, ValuesMatchOracle) {
  const struct {
    long n;
    Rational eps;
    double value;
  } cases[] = {
      {4, Rational(1, 2), 0.51786204985115473419},
      {5, Rational(1, 5), 0.48363706148373564318},
      {10, Rational(3, 10), 0.6872841265444938954},
      {100, Rational(1, 10), 0.94963365798034191195},
      {10000, Rational(1, 100), 1.1513083934041101722},
  };
  for (const auto& c : cases) {
    const auto b = capital::bound(c.n, c.eps);
    EXPECT_NEAR(to_double(b.exact_ratio_value), c.value, 1e-14) << c.n;
    EXPECT_LE(to_double(b.exact_ratio_value), c.value + 1e-15) << c.n;
  }
}

TEST(CapitalCertificate, ZeroCutoffWarns) {
  const auto cert = capital::certificate(3, Rational(1, 10));
  EXPECT_EQ(cert.cutoff, 0);
  EXPECT_FALSE(cert.warnings.empty());
  EXPECT_EQ(to_double(capital::bound(3, Rational(1, 10)).exact_ratio_value), 0.0);
}

TEST(CapitalCertificate, FeasibleOnAGrid) {
  for (long n = 1; n <= 60; ++n) {
    for (const Rational& eps : {Rational(1, 10), Rational(3, 10), Rational(99, 100)}) {
      const auto r = capital::verify(n, eps);
      ASSERT_TRUE(r.feasible) << n << " " << eps << " " << r.tightest_constraint;
    }
  }
}

TEST(CapitalCertificate, StreamingAgreesWithGenericEvaluation) {
  for (long n = 2; n <= 8; ++n) {
    const auto cert = capital::certificate(n, Rational(1, 2));
    const auto fast = capital::verify(cert);
    const auto slow = evaluate(capital::dual(n, false), cert.point(), {.tolerance = 1e-12, .keep_slacks = true});
    EXPECT_EQ(fast.feasible, slow.feasible) << n;
  }
}

TEST(CapitalCertificate, ForcedFullCutoffIsInfeasible) {
  const auto cert = capital::certificate(10, Rational(3, 10), 10L);
  const auto r = capital::verify(cert);
  EXPECT_FALSE(r.feasible);
  EXPECT_LT(to_double(r.worst_slack), -0.1);
  EXPECT_EQ(r.tightest_constraint, "x_6_10");
}

TEST(CapitalCertificate, WeakDualityAgainstLp) {
  for (long n = 1; n <= 5; ++n) {
    const double lp = to_double(solve_exact(capital::primal(n)).objective);
    for (const Rational& eps : {Rational(1, 5), Rational(1, 2)}) {
      EXPECT_LE(to_double(capital::bound(n, eps).exact_ratio_value), lp + 1e-9) << n;
    }
  }
}

TEST(CapitalCertificate, ClosedFormAtHugeN) {
  const BigInt n("10000000000000000000000000000000000000000");
  const double v = capital::closed_form_bound(n, Rational(1, 100)).to_double();
  EXPECT_NEAR(v, 2.5135018449002746476, 1e-12);
  EXPECT_GT(v, 2.45);
  EXPECT_LT(v, 2.55);
}

TEST(CapitalCertificate, IncreasesOnAGeometricGrid) {
  double prev = 0;
  for (long n = 10; n <= 100000; n *= 10) {
    const double v = to_double(capital::bound(n, Rational(1, 10)).exact_ratio_value);
    EXPECT_GT(v, prev) << n;
    prev = v;
  }
}

TEST(CapitalCertificate, BadEpsilonThrows) {
  EXPECT_THROW(capital::certificate(5, Rational(0)), std::domain_error);
  EXPECT_THROW(capital::certificate(5, Rational(1)), std::domain_error);
}
