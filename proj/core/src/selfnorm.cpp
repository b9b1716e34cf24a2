#include "recipro/selfnorm.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "recipro/errors.hpp"
#include "recipro/random.hpp"

namespace recipro {
namespace {

void fill(ObservationBatch& batch, std::span<const ReciprocatingFunction* const> recips) {
  const std::size_t n = batch.x.size();
  batch.w.resize(n);
  batch.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ReciprocatingFunction& r = *recips[i];
    const double x = batch.x[i];
    if (!r.in_support(x))
      throw ValidationError("observation " + std::to_string(i) + " (" + std::to_string(x) +
                            ") is outside the support of its law");
    if (!r.has_atom(x)) batch.u[i] = 1.0;
    const double partner = r.reciprocal_at(x, batch.u[i]);
    batch.w[i] = std::fabs(x - partner);
    batch.y[i] = std::fabs(x * partner);
  }
}

void check_lengths(std::size_t n, std::size_t m) {
  if (n != m) throw ValidationError("need one reciprocating function per observation");
}

double sum(std::span<const double> v) {
  double s = 0.0;
  for (double a : v) s += a;
  return s;
}

double denominator_w(const ObservationBatch& batch) {
  double sq = 0.0;
  for (double w : batch.w) sq += w * w;
  return 0.5 * std::sqrt(sq);
}

double denominator_y(const ObservationBatch& batch, double lambda) {
  if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
  double acc = 0.0;
  for (double y : batch.y) acc += std::pow(y, lambda);
  return std::pow(acc, 1.0 / (2.0 * lambda));
}

double ratio(double numerator, double denominator) {
  if (denominator == 0.0) return 0.0;
  return numerator / denominator;
}

}  // namespace

ObservationBatch attach_w_y(std::span<const double> x, std::span<const ReciprocatingFunction* const> recips,
                            std::uint64_t seed) {
  check_lengths(x.size(), recips.size());
  ObservationBatch batch;
  batch.seed = seed;
  batch.x.assign(x.begin(), x.end());
  batch.u.resize(x.size());
  Engine engine = make_engine(seed);
  for (auto& u : batch.u) u = uniform01(engine);
  fill(batch, recips);
  return batch;
}

ObservationBatch attach_w_y(std::span<const double> x, const ReciprocatingFunction& recip, std::uint64_t seed) {
  const std::vector<const ReciprocatingFunction*> recips(x.size(), &recip);
  return attach_w_y(x, recips, seed);
}

ObservationBatch attach_w_y_with_u(std::span<const double> x,
                                   std::span<const ReciprocatingFunction* const> recips,
                                   std::span<const double> u) {
  check_lengths(x.size(), recips.size());
  check_lengths(x.size(), u.size());
  ObservationBatch batch;
  batch.x.assign(x.begin(), x.end());
  batch.u.assign(u.begin(), u.end());
  for (double v : batch.u)
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("randomizer draws must lie in [0,1]");
  fill(batch, recips);
  return batch;
}

double s_w(const ObservationBatch& batch) { return ratio(sum(batch.x), denominator_w(batch)); }

double s_y(const ObservationBatch& batch, double lambda) {
  return ratio(sum(batch.x), denominator_y(batch, lambda));
}

double s_classic(std::span<const double> x) {
  double sq = 0.0;
  for (double a : x) sq += a * a;
  return ratio(sum(x), std::sqrt(sq));
}

PivotValue pivot(const ObservationBatch& batch, double theta, std::optional<double> lambda) {
  const double numerator = sum(batch.x) - static_cast<double>(batch.size()) * theta;
  const double denominator = lambda ? denominator_y(batch, *lambda) : denominator_w(batch);
  if (denominator == 0.0) {
    if (numerator == 0.0) return {0.0, false};
    return {std::copysign(std::numeric_limits<double>::infinity(), numerator), true};
  }
  return {numerator / denominator, false};
}

double student_t_from_s(double s, std::size_t n) {
  if (n == 0) throw ValidationError("sample size must be positive");
  const double nn = static_cast<double>(n);
  if (!(std::fabs(s) < std::sqrt(nn))) throw ValidationError("|S| must be below sqrt(n)");
  return std::sqrt((nn - 1.0) / nn) * s / std::sqrt(1.0 - s * s / nn);
}

}  // namespace recipro
