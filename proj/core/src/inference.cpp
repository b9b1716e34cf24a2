#include "recipro/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "parallel.hpp"
#include "recipro/errors.hpp"
#include "recipro/random.hpp"

namespace recipro {
namespace {

EmpiricalModel build_model(std::span<const Rational> sample, const Rational& theta, bool allow_constant) {
  const std::size_t n = sample.size();
  if (n < 2) throw ValidationError("need at least two observations");
  const Rational weight(1, static_cast<unsigned long>(n));
  EmpiricalModel model;
  model.sample.assign(sample.begin(), sample.end());
  Rational total = 0;
  for (const auto& x : sample) total += x;
  model.sample_mean = total / static_cast<unsigned long>(n);
  model.theta = theta;
  model.residual_mean = model.sample_mean - theta;

  std::vector<Atom> raw;
  raw.reserve(n);
  for (const auto& x : sample) raw.push_back(Atom{x, weight});
  const ZeroMeanDiscreteDist centered = center(raw);
  if (centered.is_degenerate() && !allow_constant) throw ValidationError("all observations are equal");
  for (const auto& a : centered.atoms())
    model.shifted_atoms.push_back(Atom{Rational(a.value + model.residual_mean), a.weight});
  model.centered_dist = centered;
  model.reciprocator = DiscreteReciprocator(centered);
  return model;
}

std::vector<double> centered_doubles(const EmpiricalModel& model) {
  std::vector<double> out;
  out.reserve(model.sample.size());
  for (const auto& x : model.sample) out.push_back(to_double(Rational(x - model.sample_mean)));
  return out;
}

// S_W pivots of B resamples of the centered sample, in replicate order.
std::vector<double> bootstrap_pivots(const EmpiricalModel& model, std::size_t B, std::uint64_t seed) {
  if (B < 100) throw ValidationError("bootstrap needs at least 100 replications");
  const std::size_t n = model.sample.size();
  std::vector<Rational> centered;
  centered.reserve(n);
  for (const auto& x : model.sample) centered.push_back(Rational(x - model.sample_mean));

  std::vector<double> pivots(B);
  detail::parallel_chunks(B, 64, [&](std::size_t begin, std::size_t end) {
    std::vector<Rational> draw(n);
    std::vector<double> u(n);
    for (std::size_t b = begin; b < end; ++b) {
      Engine engine = make_engine(seed, 1 + b);
      Rational total = 0;
      for (auto& d : draw) {
        auto index = static_cast<std::size_t>(uniform01(engine) * static_cast<double>(n));
        d = centered[std::min(index, n - 1)];
        total += d;
      }
      for (auto& v : u) v = uniform01(engine);
      const EmpiricalModel resampled = build_model(draw, Rational(0), true);
      const std::vector<double> x = centered_doubles(resampled);
      const std::vector<const ReciprocatingFunction*> recips(n, &resampled.reciprocator);
      const ObservationBatch batch = attach_w_y_with_u(x, recips, u);
      // Numerator Σx* - n·mean, with the bootstrap world's mean at zero.
      double sq = 0.0;
      for (double w : batch.w) sq += w * w;
      const double numerator = to_double(total);
      const double denominator = 0.5 * std::sqrt(sq);
      if (denominator == 0.0)
        pivots[b] = numerator == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), numerator);
      else
        pivots[b] = numerator / denominator;
    }
  });
  return pivots;
}

}  // namespace

EmpiricalModel fit_empirical(std::span<const Rational> sample, const Rational& theta) {
  return build_model(sample, theta, false);
}

std::string_view to_string(TestMethod method) {
  switch (method) {
    case TestMethod::normal_c5: return "normal-c5";
    case TestMethod::bernoulli_lc: return "bernoulli-lc";
    case TestMethod::bootstrap: return "bootstrap";
  }
  return "unknown";
}

TestMethod parse_test_method(std::string_view text) {
  if (text == "normal-c5" || text == "c5") return TestMethod::normal_c5;
  if (text == "bernoulli-lc") return TestMethod::bernoulli_lc;
  if (text == "bootstrap") return TestMethod::bootstrap;
  throw ValidationError("unknown test method '" + std::string(text) + "'");
}

MeanTest::MeanTest(std::span<const Rational> sample, const TestOptions& options)
    : options_(options), model_(fit_empirical(sample, Rational(0))) {
  if (!(options_.alpha > 0.0 && options_.alpha < 1.0)) throw ValidationError("alpha must lie in (0,1)");
  mean_ = to_double(model_.sample_mean);
  const std::vector<double> x = centered_doubles(model_);
  batch_ = attach_w_y(x, model_.reciprocator, options_.seed);
  switch (options_.method) {
    case TestMethod::normal_c5:
      break;
    case TestMethod::bernoulli_lc: {
      p_upper_ = to_double(asymmetry_p(model_.reciprocator));
      p_lower_ = to_double(asymmetry_p(model_.centered_dist.negated()));
      lambda_ = std::max(lambda_star(p_upper_), lambda_star(p_lower_));
      break;
    }
    case TestMethod::bootstrap: {
      abs_pivots_ = bootstrap_pivots(model_, options_.bootstrap_reps, options_.seed);
      for (auto& t : abs_pivots_) t = std::fabs(t);
      std::sort(abs_pivots_.begin(), abs_pivots_.end());
      break;
    }
  }
}

TestResult MeanTest::at(double theta) const {
  if (!std::isfinite(theta)) throw ValidationError("theta must be finite");
  TestResult result;
  result.method = options_.method;
  result.alpha = options_.alpha;
  result.seed = options_.seed;
  result.n = batch_.size();
  result.theta = theta;
  const std::size_t n = batch_.size();
  const bool use_y = options_.method == TestMethod::bernoulli_lc;
  const PivotValue pv = pivot(batch_, theta - mean_, use_y ? std::optional<double>(lambda_) : std::nullopt);
  result.statistic = pv.value;
  result.out_of_domain = pv.out_of_domain;
  const double s = pv.value;
  switch (options_.method) {
    case TestMethod::normal_c5:
      result.p_value_bound = std::min(1.0, 2.0 * normal_c5_bound(std::fabs(s)));
      break;
    case TestMethod::bernoulli_lc: {
      result.lambda = lambda_;
      const double upper = bernoulli_lc_bound(n, p_upper_, lambda_, s);
      const double lower = bernoulli_lc_bound(n, p_lower_, lambda_, -s);
      result.p_value_bound = std::min(1.0, 2.0 * std::min(upper, lower));
      break;
    }
    case TestMethod::bootstrap: {
      const auto it = std::lower_bound(abs_pivots_.begin(), abs_pivots_.end(), std::fabs(s));
      const auto count = static_cast<double>(abs_pivots_.end() - it);
      result.p_value_bound = count / static_cast<double>(abs_pivots_.size());
      break;
    }
  }
  result.reject = result.p_value_bound <= options_.alpha;
  return result;
}

TestResult test_mean(std::span<const Rational> sample, double theta0, const TestOptions& options) {
  return MeanTest(sample, options).at(theta0);
}

ConfidenceInterval confidence_interval(std::span<const Rational> sample, const TestOptions& options) {
  const MeanTest tester(sample, options);
  ConfidenceInterval ci;
  ci.alpha = options.alpha;
  ci.method = options.method;
  ci.seed = options.seed;

  const double center = to_double(tester.model().sample_mean);
  double scale = 0.0;
  for (double x : tester.batch().x) scale = std::max(scale, std::fabs(x));
  const double tolerance = 1e-6 * scale;
  auto rejects = [&](double theta) { return tester.at(theta).reject; };

  // Returns the farthest accepted θ on one side (direction = ±1).
  auto edge = [&](double direction) {
    if (rejects(center)) return center;
    double inside = center;
    double step = scale;
    double outside = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < 200; ++i) {
      const double probe = center + direction * step;
      if (rejects(probe)) {
        outside = probe;
        break;
      }
      inside = probe;
      step *= 2.0;
    }
    if (std::isnan(outside)) return direction * std::numeric_limits<double>::infinity();
    while (std::fabs(outside - inside) > tolerance) {
      const double mid = 0.5 * (inside + outside);
      if (rejects(mid))
        outside = mid;
      else
        inside = mid;
    }
    return inside;
  };
  ci.lower = edge(-1.0);
  ci.upper = edge(1.0);

  if (std::isfinite(ci.lower) && std::isfinite(ci.upper)) {
    // Scan a grid reaching half a width beyond each end.
    const double half = 0.5 * std::max(ci.upper - ci.lower, scale);
    const double lo = ci.lower - half;
    const double hi = ci.upper + half;
    constexpr int points = 201;
    double previous_p = -1.0;
    bool past_center = false;
    for (int i = 0; i < points; ++i) {
      const double theta = lo + (hi - lo) * i / (points - 1);
      const TestResult r = tester.at(theta);
      if (!past_center && theta >= center) {
        past_center = true;
      } else if (i > 0) {
        const bool ok = past_center ? r.p_value_bound <= previous_p + 1e-15 : r.p_value_bound + 1e-15 >= previous_p;
        if (!ok) ci.monotone_verified = false;
      }
      if (!r.reject) {
        ci.lower = std::min(ci.lower, theta);
        ci.upper = std::max(ci.upper, theta);
      }
      previous_p = r.p_value_bound;
    }
  }
  return ci;
}

TailFunction bootstrap_pivot_distribution(std::span<const Rational> sample, double theta, std::size_t B,
                                          std::uint64_t seed) {
  // Shifting the sample to mean θ and evaluating at θ leaves the pivot law
  // unchanged, so θ only needs to be finite here.
  if (!std::isfinite(theta)) throw ValidationError("theta must be finite");
  const EmpiricalModel model = build_model(sample, Rational(0), true);
  std::vector<double> pivots = bootstrap_pivots(model, B, seed);
  std::sort(pivots.begin(), pivots.end());
  const auto total = static_cast<double>(pivots.size());
  const auto finite_begin = std::find_if(pivots.begin(), pivots.end(), [](double t) { return std::isfinite(t); });
  const auto finite_end = std::find_if(finite_begin, pivots.end(), [](double t) { return !std::isfinite(t); });
  std::vector<double> grid;
  std::vector<double> values;
  for (auto it = finite_begin; it != finite_end; ++it) {
    if (!grid.empty() && grid.back() == *it) continue;
    grid.push_back(*it);
    values.push_back(static_cast<double>(pivots.end() - it) / total);
  }
  const double above = static_cast<double>(pivots.end() - finite_end) / total;
  return TailFunction(std::move(grid), std::move(values), above, TailFunction::Interpolation::step);
}

}  // namespace recipro
