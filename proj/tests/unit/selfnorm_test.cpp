#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "recipro/errors.hpp"
#include "recipro/random.hpp"
#include "recipro/selfnorm.hpp"

using namespace recipro;

namespace {

DiscreteReciprocator example() {
  return DiscreteReciprocator(ZeroMeanDiscreteDist::from_atoms(
      {{-1, Rational(1, 2)}, {0, Rational(1, 10)}, {1, Rational(3, 10)}, {2, Rational(1, 10)}}));
}

}  // namespace

TEST(SelfNorm, HandComputedSw) {
  const auto r = example();
  const std::vector<double> x{2.0, -1.0, 1.0, 0.0};
  const std::vector<const ReciprocatingFunction*> recips(x.size(), &r);
  // u = 0.9 sends -1 to 2 (W = 3); 1 and 2 always go to -1.
  const std::vector<double> u{0.5, 0.9, 0.5, 0.5};
  const auto batch = attach_w_y_with_u(x, recips, u);
  EXPECT_EQ(batch.w, (std::vector<double>{3.0, 3.0, 2.0, 0.0}));
  EXPECT_EQ(batch.y, (std::vector<double>{2.0, 2.0, 1.0, 0.0}));
  EXPECT_DOUBLE_EQ(s_w(batch), 2.0 / (0.5 * std::sqrt(22.0)));
  EXPECT_DOUBLE_EQ(s_y(batch, 1.0), 2.0 / std::sqrt(5.0));
  EXPECT_DOUBLE_EQ(s_y(batch, 2.0), 2.0 / std::pow(9.0, 0.25));
  EXPECT_DOUBLE_EQ(s_classic(x), 2.0 / std::sqrt(6.0));
}

TEST(SelfNorm, ZeroOverZeroIsZero) {
  const DiscreteReciprocator r(ZeroMeanDiscreteDist::degenerate());
  const std::vector<double> x{0.0, 0.0};
  const auto batch = attach_w_y(x, r, 1);
  EXPECT_EQ(s_w(batch), 0.0);
  EXPECT_EQ(s_y(batch, 1.5), 0.0);
  EXPECT_EQ(s_classic(x), 0.0);
  const auto p = pivot(batch, 0.5);
  EXPECT_TRUE(p.out_of_domain);
  EXPECT_TRUE(std::isinf(p.value));
  EXPECT_LT(p.value, 0.0);
  EXPECT_FALSE(pivot(batch, 0.0).out_of_domain);
}

TEST(SelfNorm, RandomizerOnlyAtAtomsAndSeeded) {
  const auto r = example();
  const std::vector<double> x{-1.0, -1.0, 2.0, 1.0, -1.0, 0.0};
  const auto a = attach_w_y(x, r, 42);
  const auto b = attach_w_y(x, r, 42);
  EXPECT_EQ(a.w, b.w);
  EXPECT_EQ(a.u, b.u);
  EXPECT_EQ(a.seed, 42u);
  for (double u : a.u) {
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(SelfNorm, RejectsOffSupportAndLengthMismatch) {
  const auto r = example();
  const std::vector<double> x{0.5};
  EXPECT_THROW(attach_w_y(x, r, 1), ValidationError);
  const std::vector<double> ok{1.0, 2.0};
  const std::vector<const ReciprocatingFunction*> one{&r};
  EXPECT_THROW(attach_w_y(ok, one, 1), ValidationError);
  const auto batch = attach_w_y(ok, r, 1);
  EXPECT_THROW(s_y(batch, 0.0), ValidationError);
}

TEST(SelfNorm, SymmetricLawGivesClassicStatistic) {
  // For a symmetric law r(x) = -x, so W = 2|x| and S_W = S.
  const DiscreteReciprocator r(
      ZeroMeanDiscreteDist::from_atoms({{-2, Rational(1, 4)}, {-1, Rational(1, 4)}, {1, Rational(1, 4)}, {2, Rational(1, 4)}}));
  Engine rng = make_engine(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x;
    for (int i = 0; i < 9; ++i) x.push_back(std::array<double, 4>{-2, -1, 1, 2}[rng() % 4]);
    const auto batch = attach_w_y(x, r, static_cast<std::uint64_t>(trial));
    EXPECT_NEAR(s_w(batch), s_classic(x), 1e-14);
    EXPECT_NEAR(s_y(batch, 1.0), s_classic(x), 1e-14);
  }
}

TEST(SelfNorm, ScaleInvariance) {
  const auto d = ZeroMeanDiscreteDist::from_atoms(
      {{-1, Rational(1, 2)}, {0, Rational(1, 10)}, {1, Rational(3, 10)}, {2, Rational(1, 10)}});
  const DiscreteReciprocator r(d);
  const DiscreteReciprocator r3(d.scaled(3));
  const std::vector<double> x{-1, 2, 1, -1, 0, -1};
  std::vector<double> x3;
  for (double v : x) x3.push_back(3 * v);
  const auto a = attach_w_y(x, r, 9);
  const auto b = attach_w_y(x3, r3, 9);
  EXPECT_NEAR(s_w(a), s_w(b), 1e-14);
  EXPECT_NEAR(s_y(a, 1.3), s_y(b, 1.3), 1e-14);
}

TEST(SelfNorm, StudentTRelation) {
  const std::vector<double> x{1.2, -0.4, 2.5, 0.3, -1.1, 0.9};
  const double n = static_cast<double>(x.size());
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double t = mean / std::sqrt(ss / (n - 1.0) / n);
  EXPECT_NEAR(student_t_from_s(s_classic(x), x.size()), t, 1e-12);
  EXPECT_THROW(student_t_from_s(std::sqrt(6.0), 6), ValidationError);
}

TEST(SelfNorm, PivotShiftsNumerator) {
  const auto r = example();
  const std::vector<double> x{1.0, 2.0, -1.0};
  const auto batch = attach_w_y(x, r, 3);
  const double denom = 0.5 * std::sqrt(std::inner_product(batch.w.begin(), batch.w.end(), batch.w.begin(), 0.0));
  EXPECT_DOUBLE_EQ(pivot(batch, 0.25).value, (2.0 - 0.75) / denom);
  EXPECT_DOUBLE_EQ(pivot(batch, 0.0).value, s_w(batch));
  EXPECT_DOUBLE_EQ(pivot(batch, 0.0, 1.0).value, s_y(batch, 1.0));
}
