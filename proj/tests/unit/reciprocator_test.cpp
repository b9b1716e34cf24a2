#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "recipro/errors.hpp"
#include "recipro/reciprocator.hpp"

using namespace recipro;

namespace {

DiscreteReciprocator example() {
  return DiscreteReciprocator(ZeroMeanDiscreteDist::from_atoms(
      {{-1, Rational(1, 2)}, {0, Rational(1, 10)}, {1, Rational(3, 10)}, {2, Rational(1, 10)}}));
}

Rational q(long n, long d = 1) { return ratio(n, d); }

}  // namespace

TEST(Reciprocator, ExampleGoldenValues) {
  const auto r = example();
  EXPECT_EQ(r.reciprocal(-1, q(1, 2)), 1);
  EXPECT_EQ(r.reciprocal(-1, q(7, 10)), 2);
  EXPECT_EQ(r.reciprocal(-1, q(3, 5)), 1);
  for (const Rational& u : {q(1, 100), q(1, 2), q(1)}) {
    EXPECT_EQ(r.reciprocal(1, u), -1);
    EXPECT_EQ(r.reciprocal(2, u), -1);
    EXPECT_EQ(r.reciprocal(0, u), 0);
    EXPECT_EQ(r.level(-1, u), u / 2);
    EXPECT_EQ(r.level(1, u), u * q(3, 10));
    EXPECT_EQ(r.level(2, u), q(3, 10) + u * q(1, 5));
    EXPECT_EQ(r.level(0, u), 0);
  }
  EXPECT_EQ(r.level(2, q(1, 2)), q(2, 5));
  EXPECT_EQ(r.x_plus(q(1, 5)), 1);
  EXPECT_EQ(r.x_plus(q(3, 10)), 1);
  EXPECT_EQ(r.x_plus(q(2, 5)), 2);
  EXPECT_EQ(r.x_minus(q(3, 10)), -1);
  EXPECT_EQ(r.x_plus(0), 0);
  EXPECT_EQ(r.x_minus(0), 0);
  EXPECT_EQ(r.mass(), q(1, 2));
}

TEST(Reciprocator, ExampleBranches) {
  const auto r = example();
  const auto& b = r.branches(-1);
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[0].u_lo, 0);
  EXPECT_EQ(b[0].u_hi, q(3, 5));
  EXPECT_EQ(b[0].partner, 1);
  EXPECT_EQ(b[1].u_hi, 1);
  EXPECT_EQ(b[1].partner, 2);
  EXPECT_EQ(r.branches(2).size(), 1u);
  EXPECT_THROW(r.branches(q(1, 2)), ValidationError);
}

TEST(Reciprocator, ExampleWidthAndPairs) {
  const auto r = example();
  EXPECT_EQ(r.width(q(1, 10)), 2);
  EXPECT_EQ(r.width(q(3, 10)), 2);
  EXPECT_EQ(r.width(q(2, 5)), 3);
  EXPECT_EQ(r.max_level_for_width(2), q(3, 10));
  EXPECT_EQ(r.max_level_for_width(3), q(1, 2));
  const auto& pf = r.pair_functions();
  EXPECT_EQ(pf.c(2), -1);
  EXPECT_EQ(pf.d(2), 1);
  EXPECT_EQ(pf.c(3), -1);
  EXPECT_EQ(pf.d(3), 2);
  EXPECT_EQ(pf.tau(3), 2);
  EXPECT_EQ(pf.c(0), 0);
  EXPECT_THROW(pf.c(q(5, 2)), ValidationError);
  EXPECT_EQ(r.level_breakpoints(), (std::vector<Rational>{q(3, 10), q(1, 2)}));
}

TEST(Reciprocator, DoublePathAgreesWithExact) {
  const auto r = example();
  EXPECT_DOUBLE_EQ(r.reciprocal_at(-1.0, 0.5), 1.0);
  EXPECT_DOUBLE_EQ(r.reciprocal_at(-1.0, 0.6), 1.0);
  EXPECT_DOUBLE_EQ(r.reciprocal_at(-1.0, 0.7), 2.0);
  EXPECT_DOUBLE_EQ(r.reciprocal_at(2.0, 0.3), -1.0);
  EXPECT_THROW(r.reciprocal_at(0.5, 0.5), ValidationError);
  EXPECT_TRUE(r.in_support(1.0));
  EXPECT_FALSE(r.in_support(1.5));
}

TEST(Reciprocator, MatchesDefinitionOnRandomLaws) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = oracle::random_law(rng);
    const DiscreteReciprocator r(d);
    for (const auto& a : d.atoms()) {
      for (int k = 1; k <= 12; ++k) {
        const Rational u = ratio(k, 12);
        ASSERT_EQ(r.level(a.value, u), oracle::naive_H(d, a.value, u));
        ASSERT_EQ(r.reciprocal(a.value, u), oracle::naive_r(d, a.value, u))
            << "x=" << a.value << " u=" << u;
        ASSERT_DOUBLE_EQ(r.reciprocal_at(to_double(a.value), to_double(u)), to_double(oracle::naive_r(d, a.value, u)));
      }
    }
    const Rational m = d.half_mean_abs();
    for (int k = 1; k <= 20; ++k) {
      const Rational h = m * ratio(k, 20);
      EXPECT_EQ(r.x_plus(h), oracle::naive_x_plus(d, h));
      EXPECT_EQ(r.x_minus(h), oracle::naive_x_minus(d, h));
    }
  }
}

TEST(Reciprocator, ReciprocalHasOppositeSignAndBalancesLevel) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = oracle::random_law(rng);
    const DiscreteReciprocator r(d);
    for (const auto& a : d.atoms()) {
      if (a.value == 0) continue;
      for (const auto& b : r.branches(a.value)) {
        EXPECT_LT(b.u_lo, b.u_hi);
        EXPECT_LT(a.value * b.partner, 0);
        // G reaches the branch level at the partner but not strictly inside it.
        const Rational h = r.level(a.value, b.u_hi);
        EXPECT_GE(oracle::naive_G(d, b.partner), h);
        EXPECT_LT(oracle::naive_G_inner(d, b.partner), h);
      }
    }
  }
}

TEST(Reciprocator, LevelBijection) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const DiscreteReciprocator r(oracle::random_law(rng));
    const Rational m = r.mass();
    for (int k = 1; k <= 50; ++k) {
      const Rational h = m * ratio(k, 50);
      EXPECT_EQ(r.level(r.x_plus(h), r.u_plus(h)), h);
      EXPECT_EQ(r.level(r.x_minus(h), r.u_minus(h)), h);
    }
  }
}

TEST(Reciprocator, InvolutionOnGoodSet) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = oracle::random_law(rng);
    const DiscreteReciprocator r(d);
    for (const auto& a : d.atoms()) {
      if (a.value == 0) continue;
      for (const auto& b : r.branches(a.value)) {
        const Rational u = (b.u_lo + b.u_hi) / 2;
        if (!r.in_good_set(a.value, u)) continue;
        const Rational h = r.level(a.value, u);
        const Rational partner = r.reciprocal(a.value, u);
        const Rational u_hat = a.value > 0 ? r.u_minus(h) : r.u_plus(h);
        EXPECT_EQ(r.level(partner, u_hat), h);
        EXPECT_EQ(r.reciprocal(partner, u_hat), a.value);
      }
    }
  }
}

TEST(Reciprocator, ClassificationAndGoodSet) {
  const auto r = example();
  const auto c = r.classify(1);
  EXPECT_EQ(c.side, Side::positive);
  EXPECT_TRUE(c.in_M);
  EXPECT_FALSE(c.in_N);
  EXPECT_FALSE(r.in_good_set(1, 0));
  EXPECT_TRUE(r.in_good_set(1, q(1, 2)));
  EXPECT_FALSE(r.in_good_set(0, q(1, 2)));
}

TEST(Reciprocator, DegenerateLawMapsToZero) {
  const DiscreteReciprocator r(ZeroMeanDiscreteDist::degenerate());
  EXPECT_EQ(r.mass(), 0);
  EXPECT_EQ(r.reciprocal(0, q(1, 2)), 0);
  EXPECT_DOUBLE_EQ(r.reciprocal_at(0.0, 0.3), 0.0);
  EXPECT_TRUE(r.pair_functions().points().empty());
}

TEST(Reciprocator, ScaleEquivariance) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = oracle::random_law(rng);
    const DiscreteReciprocator r(d);
    const DiscreteReciprocator rs(d.scaled(q(5, 2)));
    const DiscreteReciprocator rn(d.negated());
    for (const auto& a : d.atoms()) {
      for (const Rational& u : {q(1, 3), q(1)}) {
        EXPECT_EQ(rs.reciprocal(a.value * q(5, 2), u), r.reciprocal(a.value, u) * q(5, 2));
        EXPECT_EQ(rn.reciprocal(-a.value, u), -r.reciprocal(a.value, u));
      }
    }
  }
}

TEST(ContinuousReciprocator, SymmetricLawReflects) {
  ContinuousDistSpec spec;
  spec.cdf = [](double x) { return std::clamp((x + 1.0) / 2.0, 0.0, 1.0); };
  spec.lower = -1.0;
  spec.upper = 1.0;
  const ContinuousReciprocator r(curve_from_continuous(spec));
  for (double x : {-0.8, -0.25, 0.1, 0.6}) EXPECT_NEAR(r.reciprocal(x), -x, 1e-8) << x;
  EXPECT_DOUBLE_EQ(r.reciprocal(0.0), 0.0);
  EXPECT_NEAR(r.width(r.mass() / 4), 1.0, 1e-8);
  const PairValue pv = r.pair_at(1.0);
  EXPECT_NEAR(pv.c, -0.5, 1e-8);
  EXPECT_NEAR(pv.d, 0.5, 1e-8);
  EXPECT_FALSE(r.has_atom(0.3));
}

TEST(ContinuousReciprocator, SkewedLawBalancesG) {
  ContinuousDistSpec spec;
  spec.cdf = [](double x) { return x <= -1.0 ? 0.0 : 1.0 - std::exp(-(x + 1.0)); };
  spec.lower = -1.0;
  const auto curve = curve_from_continuous(spec);
  const ContinuousReciprocator r(curve);
  for (double x : {0.2, 1.0, 2.5}) {
    const double y = r.reciprocal(x);
    EXPECT_LT(y, 0.0);
    EXPECT_GT(y, -1.0);
    EXPECT_NEAR(curve.eval(y), curve.eval(x), 1e-9);
    EXPECT_NEAR(r.reciprocal(y), x, 1e-6);
  }
  EXPECT_TRUE(std::isinf(r.x_plus(r.mass())));
}
