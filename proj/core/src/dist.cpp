#include "recipro/dist.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "recipro/errors.hpp"

namespace recipro {

ZeroMeanDiscreteDist ZeroMeanDiscreteDist::from_atoms(std::vector<Atom> atoms) {
  if (atoms.empty()) throw ValidationError("distribution has no atoms");
  Rational total = 0;
  Rational mean = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].weight <= 0 || atoms[i].weight > 1)
      throw ValidationError("atom weight must lie in (0,1], got " + to_string(atoms[i].weight));
    if (i > 0 && !(atoms[i - 1].value < atoms[i].value))
      throw ValidationError("atom values must be strictly increasing");
    total += atoms[i].weight;
    mean += atoms[i].value * atoms[i].weight;
  }
  if (total != 1) throw ValidationError("weights sum to " + to_string(total) + ", not 1");
  if (mean != 0) throw ValidationError("mean is " + to_string(mean) + ", not 0");
  return ZeroMeanDiscreteDist(std::move(atoms));
}

ZeroMeanDiscreteDist ZeroMeanDiscreteDist::degenerate() {
  return ZeroMeanDiscreteDist({Atom{0, 1}});
}

std::optional<std::size_t> ZeroMeanDiscreteDist::find(const Rational& x) const {
  const auto it = std::lower_bound(atoms_.begin(), atoms_.end(), x,
                                   [](const Atom& a, const Rational& v) { return a.value < v; });
  if (it == atoms_.end() || it->value != x) return std::nullopt;
  return static_cast<std::size_t>(it - atoms_.begin());
}

Rational ZeroMeanDiscreteDist::mass_at(const Rational& x) const {
  const auto index = find(x);
  return index ? atoms_[*index].weight : Rational(0);
}

Rational ZeroMeanDiscreteDist::half_mean_abs() const {
  Rational sum = 0;
  for (const auto& a : atoms_) sum += abs(a.value) * a.weight;
  return Rational(sum / 2);
}

ZeroMeanDiscreteDist ZeroMeanDiscreteDist::scaled(const Rational& gamma) const {
  if (gamma <= 0) throw ValidationError("scale factor must be positive");
  std::vector<Atom> out = atoms_;
  for (auto& a : out) a.value *= gamma;
  return ZeroMeanDiscreteDist(std::move(out));
}

ZeroMeanDiscreteDist ZeroMeanDiscreteDist::negated() const {
  std::vector<Atom> out(atoms_.rbegin(), atoms_.rend());
  for (auto& a : out) a.value = -a.value;
  return ZeroMeanDiscreteDist(std::move(out));
}

ZeroMeanDiscreteDist center(std::span<const Atom> raw_atoms) {
  if (raw_atoms.empty()) throw ValidationError("distribution has no atoms");
  std::map<Rational, Rational> merged;
  Rational total = 0;
  Rational mean = 0;
  for (const auto& a : raw_atoms) {
    if (a.weight <= 0) throw ValidationError("atom weight must be positive, got " + to_string(a.weight));
    merged[a.value] += a.weight;
    total += a.weight;
    mean += a.value * a.weight;
  }
  if (total != 1) throw ValidationError("weights sum to " + to_string(total) + ", not 1");
  std::vector<Atom> atoms;
  atoms.reserve(merged.size());
  for (const auto& [value, weight] : merged) atoms.push_back(Atom{Rational(value - mean), weight});
  return ZeroMeanDiscreteDist::from_atoms(std::move(atoms));
}

DiscreteCurve::DiscreteCurve(const ZeroMeanDiscreteDist& dist) {
  Rational running = 0;
  for (const auto& a : dist.atoms()) {
    if (a.value <= 0) continue;
    CurveStep step{a.value, running, 0};
    running += a.value * a.weight;
    step.at = running;
    positive_.push_back(std::move(step));
  }
  mass_ = running;
  running = 0;
  const auto& atoms = dist.atoms();
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it) {
    if (it->value >= 0) continue;
    CurveStep step{Rational(-it->value), running, 0};
    running += -it->value * it->weight;
    step.at = running;
    negative_.push_back(std::move(step));
  }
  // Zero mean forces both sides to the same total.
  if (running != mass_) throw ValidationError("one-sided partial expectations differ; mean is not zero");
}

namespace {

// G on one side at distance d >= 0 from zero; `inclusive` selects G(d) versus
// the limit from the zero side.
Rational side_value(const std::vector<CurveStep>& steps, const Rational& d, bool inclusive) {
  const auto it = inclusive
      ? std::upper_bound(steps.begin(), steps.end(), d,
                         [](const Rational& v, const CurveStep& s) { return v < s.x; })
      : std::lower_bound(steps.begin(), steps.end(), d,
                         [](const CurveStep& s, const Rational& v) { return s.x < v; });
  if (it == steps.begin()) return 0;
  return std::prev(it)->at;
}

}  // namespace

Rational DiscreteCurve::eval(const Rational& x) const {
  if (x >= 0) return side_value(positive_, x, true);
  return side_value(negative_, Rational(-x), true);
}

Rational DiscreteCurve::eval_left(const Rational& x) const {
  if (x < 0) throw ValidationError("G(x-) is taken for x >= 0");
  return side_value(positive_, x, false);
}

Rational DiscreteCurve::eval_right(const Rational& x) const {
  if (x > 0) throw ValidationError("G(x+) is taken for x <= 0");
  return side_value(negative_, Rational(-x), false);
}

DiscreteCurve partial_expectation(const ZeroMeanDiscreteDist& dist) { return DiscreteCurve(dist); }

namespace {

double integrate(const std::function<double(double)>& f, double a, double b, double tolerance) {
  if (a == b) return 0.0;
  double error = 0.0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, a, b, 15, tolerance, &error);
  if (!std::isfinite(value))
    throw NumericalError("partial-expectation integral did not converge");
  // Kronrod error estimates are pessimistic; only flag clear non-convergence.
  if (error > std::max(tolerance, 1e-6) * std::max(1.0, std::fabs(value)))
    throw NumericalError("partial-expectation integral error estimate " + std::to_string(error) +
                         " exceeds tolerance");
  return value;
}

}  // namespace

double ContinuousCurve::raw(double x) const {
  if (direct_) return direct_(x);
  if (x >= 0) {
    const double hi = std::min(x, upper_);
    const double fx = cdf_(x);
    return integrate([&](double t) { return fx - cdf_(t); }, 0.0, hi, tolerance_);
  }
  const double lo = std::max(x, lower_);
  const double fx = cdf_(x);
  return integrate([&](double t) { return cdf_(t) - fx; }, lo, 0.0, tolerance_);
}

double ContinuousCurve::eval(double x) const {
  if (x == 0.0) return 0.0;
  return std::clamp(raw(x), 0.0, mass_);
}

ContinuousCurve curve_from_continuous(const ContinuousDistSpec& spec) {
  if (!spec.cdf && !spec.partial_expectation)
    throw ValidationError("continuous spec needs a cdf or a partial-expectation curve");
  if (!(spec.lower <= 0.0 && spec.upper >= 0.0) || !(spec.lower < spec.upper))
    throw ValidationError("support bounds must bracket zero");
  if (!(spec.tolerance > 0.0)) throw ValidationError("tolerance must be positive");
  ContinuousCurve curve;
  curve.cdf_ = spec.cdf;
  curve.direct_ = spec.partial_expectation;
  curve.lower_ = spec.lower;
  curve.upper_ = spec.upper;
  curve.tolerance_ = spec.tolerance;

  double plus = 0.0;
  double minus = 0.0;
  if (spec.partial_expectation) {
    plus = spec.partial_expectation(spec.upper);
    minus = spec.partial_expectation(spec.lower);
  } else {
    plus = integrate([&](double t) { return 1.0 - spec.cdf(t); }, 0.0, spec.upper, spec.tolerance);
    minus = integrate([&](double t) { return spec.cdf(t); }, spec.lower, 0.0, spec.tolerance);
  }
  if (!(plus >= 0.0) || !(minus >= 0.0) || !std::isfinite(plus) || !std::isfinite(minus))
    throw ValidationError("partial expectations must be finite and nonnegative");
  const double scale = std::max(1.0, std::max(plus, minus));
  if (std::fabs(plus - minus) > spec.tolerance * scale)
    throw ValidationError("mean is not zero within tolerance: E X+ = " + std::to_string(plus) +
                          ", E X- = " + std::to_string(minus));
  curve.mass_ = 0.5 * (plus + minus);
  return curve;
}

}  // namespace recipro
