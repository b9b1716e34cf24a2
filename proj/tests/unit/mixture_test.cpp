#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "recipro/errors.hpp"
#include "recipro/mixture.hpp"

using namespace recipro;

namespace {

ZeroMeanDiscreteDist example() {
  return ZeroMeanDiscreteDist::from_atoms(
      {{-1, Rational(1, 2)}, {0, Rational(1, 10)}, {1, Rational(3, 10)}, {2, Rational(1, 10)}});
}

Rational q(long n, long d = 1) { return ratio(n, d); }

}  // namespace

TEST(TwoPoint, ProbabilitiesAndValidation) {
  const TwoPointZeroMeanDist t(-1, 2);
  EXPECT_EQ(t.p_d(), q(1, 3));
  EXPECT_EQ(t.p_c(), q(2, 3));
  EXPECT_EQ(t.as_dist().half_mean_abs(), q(2, 3));
  EXPECT_TRUE(TwoPointZeroMeanDist(0, 0).is_degenerate());
  EXPECT_THROW(TwoPointZeroMeanDist(1, 2), ValidationError);
  EXPECT_THROW(TwoPointZeroMeanDist(-1, 0), ValidationError);
}

TEST(Mixture, ExampleDecomposition) {
  const auto w = decompose_w(example());
  ASSERT_EQ(w.components().size(), 3u);
  EXPECT_EQ(w.at(0).weight, q(1, 10));
  EXPECT_TRUE(w.at(0).component.is_degenerate());
  EXPECT_EQ(w.at(2).weight, q(6, 10));
  EXPECT_EQ(w.at(2).component, TwoPointZeroMeanDist(-1, 1));
  EXPECT_EQ(w.at(3).weight, q(3, 10));
  EXPECT_EQ(w.at(3).component, TwoPointZeroMeanDist(-1, 2));

  const auto y = decompose_y(example());
  EXPECT_EQ(y.at(0).weight, q(1, 10));
  EXPECT_EQ(y.at(1).weight, q(6, 10));
  EXPECT_EQ(y.at(1).component, TwoPointZeroMeanDist(-1, 1));
  EXPECT_EQ(y.at(2).weight, q(3, 10));
  EXPECT_EQ(y.at(2).component, TwoPointZeroMeanDist(-1, 2));
  EXPECT_THROW(y.at(3), ValidationError);
}

TEST(Mixture, JointLawSumsToOne) {
  const auto joint = joint_law(DiscreteReciprocator(example()));
  Rational total = 0;
  for (const auto& o : joint) {
    total += o.probability;
    EXPECT_EQ(o.w, abs(Rational(o.x - o.partner)));
    EXPECT_EQ(o.y, abs(Rational(o.x * o.partner)));
  }
  EXPECT_EQ(total, 1);
}

TEST(Mixture, RecompositionOnRandomLaws) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const auto d = oracle::random_law(rng);
    EXPECT_EQ(recompose(decompose_w(d)), d);
    EXPECT_EQ(recompose(decompose_y(d)), d);
  }
}

TEST(Mixture, ConditionalLawGivenWOnRandomLaws) {
  // Brute force: P(X = x | W = v) from the branch enumeration against the
  // component's two-point probabilities.
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = oracle::random_law(rng);
    const DiscreteReciprocator r(d);
    std::map<Rational, std::map<Rational, Rational>> by_w;
    for (const auto& o : joint_law(r)) by_w[o.w][o.x] += o.probability;
    const auto mix = decompose_w(r);
    ASSERT_EQ(mix.components().size(), by_w.size());
    for (const auto& [v, cond] : by_w) {
      const auto& comp = mix.at(v);
      Rational pw = 0;
      for (const auto& [x, p] : cond) pw += p;
      EXPECT_EQ(comp.weight, pw);
      if (v == 0) {
        EXPECT_TRUE(comp.component.is_degenerate());
        continue;
      }
      ASSERT_EQ(cond.size(), 2u);
      EXPECT_EQ(cond.begin()->first, comp.component.c());
      EXPECT_EQ(cond.rbegin()->first, comp.component.d());
      EXPECT_EQ(cond.rbegin()->second / pw, comp.component.p_d());
      EXPECT_EQ(comp.component.d() - comp.component.c(), v);
    }
  }
}

TEST(Mixture, ZeroExpectationBelowEveryWidth) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = oracle::random_law(rng);
    const auto joint = joint_law(DiscreteReciprocator(d));
    for (const auto& cut : joint) {
      Rational e = 0;
      for (const auto& o : joint)
        if (o.w <= cut.w) e += o.x * o.probability;
      EXPECT_EQ(e, 0);
    }
  }
}

TEST(Mixture, WAndYIndexTheSameComponents) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const auto d = oracle::random_law(rng);
    const auto w = decompose_w(d);
    const auto y = decompose_y(d);
    ASSERT_EQ(w.components().size(), y.components().size());
    for (std::size_t i = 0; i < w.components().size(); ++i) {
      EXPECT_EQ(w.components()[i].component, y.components()[i].component);
      EXPECT_EQ(w.components()[i].weight, y.components()[i].weight);
    }
  }
}

TEST(Mixture, ConstructorValidates) {
  using C = MixtureComponent;
  EXPECT_THROW(MixtureDecomposition(MixtureIndex::W, {C{2, q(1, 2), TwoPointZeroMeanDist(-1, 1)}}),
               ValidationError);
  EXPECT_THROW(MixtureDecomposition(MixtureIndex::W, {C{3, 1, TwoPointZeroMeanDist(-1, 1)}}), ValidationError);
  EXPECT_THROW(MixtureDecomposition(MixtureIndex::Y, {C{2, 1, TwoPointZeroMeanDist(-1, 1)}}), ValidationError);
  EXPECT_THROW(MixtureDecomposition(MixtureIndex::W, {C{3, q(1, 2), TwoPointZeroMeanDist(-1, 2)},
                                                      C{2, q(1, 2), TwoPointZeroMeanDist(-1, 1)}}),
               ValidationError);
  EXPECT_NO_THROW(MixtureDecomposition(MixtureIndex::Y, {C{2, 1, TwoPointZeroMeanDist(-1, 2)}}));
}

TEST(Mixture, ComponentExpectations) {
  const auto w = decompose_w(example());
  // E D_3² = 1·2/3 + 4·1/3 = 2 = τ(3).
  EXPECT_EQ(expectation_under_component_exact([](const Rational& x) { return Rational(x * x); }, 3, w), 2);
  EXPECT_DOUBLE_EQ(expectation_under_component([](double x) { return x; }, 2, w), 0.0);
}

TEST(Mixture, DegenerateLaw) {
  const auto w = decompose_w(ZeroMeanDiscreteDist::degenerate());
  ASSERT_EQ(w.components().size(), 1u);
  EXPECT_EQ(w.components()[0].v, 0);
  EXPECT_EQ(recompose(w), ZeroMeanDiscreteDist::degenerate());
}
