#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "recipro/bounds.hpp"
#include "recipro/dist.hpp"
#include "recipro/rational.hpp"
#include "recipro/reciprocator.hpp"
#include "recipro/selfnorm.hpp"

namespace recipro {

/// Plug-in model of an i.i.d. sample. The reciprocating function is always
/// built on the sample recentred at its own mean; θ only enters the pivot.
struct EmpiricalModel {
  std::vector<Rational> sample;
  Rational sample_mean;
  Rational theta;
  /// sample_mean - θ: the mean of `shifted_atoms`.
  Rational residual_mean;
  /// Atoms x_i - θ with weight 1/n each, duplicates merged, not recentred.
  std::vector<Atom> shifted_atoms;
  /// Law of x_i - sample_mean; exactly zero mean.
  ZeroMeanDiscreteDist centered_dist = ZeroMeanDiscreteDist::degenerate();
  DiscreteReciprocator reciprocator{ZeroMeanDiscreteDist::degenerate()};
};

/// Throws ValidationError for n < 2 or a constant sample.
EmpiricalModel fit_empirical(std::span<const Rational> sample, const Rational& theta);

enum class TestMethod { normal_c5, bernoulli_lc, bootstrap };

std::string_view to_string(TestMethod method);
/// Accepts "normal-c5"/"c5", "bernoulli-lc", "bootstrap".
TestMethod parse_test_method(std::string_view text);

struct TestOptions {
  double alpha = 0.05;
  TestMethod method = TestMethod::normal_c5;
  std::uint64_t seed = 0;
  std::size_t bootstrap_reps = 2000;
};

struct TestResult {
  double statistic = 0.0;
  double p_value_bound = 1.0;
  TestMethod method = TestMethod::normal_c5;
  double alpha = 0.05;
  bool reject = false;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  double theta = 0.0;
  /// Zero denominator with a nonzero shifted numerator.
  bool out_of_domain = false;
  /// Exponent used by the bernoulli-lc method (0 otherwise).
  double lambda = 0.0;
};

/// Precomputed state for testing many hypothesised means against one
/// sample: the randomized W/Y batch, and for the bootstrap the resampled
/// pivot law. The p-bound is then cheap in θ.
class MeanTest {
 public:
  MeanTest(std::span<const Rational> sample, const TestOptions& options);

  TestResult at(double theta) const;
  const EmpiricalModel& model() const { return model_; }
  const ObservationBatch& batch() const { return batch_; }
  const TestOptions& options() const { return options_; }

 private:
  TestOptions options_;
  EmpiricalModel model_;
  ObservationBatch batch_;
  double mean_ = 0.0;
  // bernoulli-lc
  double lambda_ = 0.0;
  double p_upper_ = 0.5;
  double p_lower_ = 0.5;
  // bootstrap: sorted |T*|
  std::vector<double> abs_pivots_;
};

/// Conservative two-sided test of E X = θ0. The p-value bound is
/// min(1, 2·min(upper-tail bound, lower-tail bound)) for the bound-based
/// methods and the empirical exceedance of |T*| for the bootstrap.
TestResult test_mean(std::span<const Rational> sample, double theta0, const TestOptions& options);

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
  double alpha = 0.05;
  TestMethod method = TestMethod::normal_c5;
  std::uint64_t seed = 0;
  /// False when a grid scan found the p-bound non-monotone in θ; the interval
  /// was then widened to the hull of every non-rejected grid point.
  bool monotone_verified = true;
};

/// {θ : test at θ does not reject}, by bracketing and bisection on each side
/// of the sample mean to 1e-6 times the sample scale.
ConfidenceInterval confidence_interval(std::span<const Rational> sample, const TestOptions& options);

/// Law of the S_W pivot under resampling with replacement from the sample
/// shifted to mean θ, evaluated at θ. Replicate b uses its own RNG substream
/// derived from (seed, b). Requires B >= 100.
TailFunction bootstrap_pivot_distribution(std::span<const Rational> sample, double theta, std::size_t B,
                                          std::uint64_t seed);

}  // namespace recipro
