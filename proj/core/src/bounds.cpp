#include "recipro/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/distributions/binomial.hpp>

#include "recipro/errors.hpp"

namespace recipro {

double normal_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double normal_density(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double hoeffding_bound(double x) {
  if (!(x >= 0.0)) throw ValidationError("the exponential bound is stated for x >= 0");
  return std::exp(-0.5 * x * x);
}

double c30() { return 2.0 * std::exp(3.0) / 9.0; }

double c50() { return 120.0 * std::pow(std::numbers::e / 5.0, 5); }

double normal_c3_bound(double x) { return std::min(1.0, c30() * normal_tail(x)); }

double normal_c5_bound(double x) { return std::min(1.0, c50() * normal_tail(x)); }

double lambda_star(double p) {
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("p must lie in (0,1)");
  if (p >= 0.5) return 1.0;
  return (1.0 + p + 2.0 * p * p) / (2.0 * (std::sqrt(p - p * p) + 2.0 * p * p));
}

Rational asymmetry_p(const DiscreteReciprocator& recip) {
  const auto& atoms = recip.dist().atoms();
  bool any = false;
  Rational rho = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (atoms[i].value <= 0) continue;
    for (const auto& br : recip.branches_of(i)) {
      if (br.partner == 0) throw ValidationError("r vanishes at a positive atom; the ratio is unbounded");
      const Rational ratio = atoms[i].value / abs(br.partner);
      if (!any || ratio > rho) rho = ratio;
      any = true;
    }
  }
  if (!any) throw ValidationError("asymmetry parameter needs mass on (0, inf)");
  return Rational(1 / (1 + rho));
}

Rational asymmetry_p(const ZeroMeanDiscreteDist& dist) { return asymmetry_p(DiscreteReciprocator(dist)); }

TailFunction::TailFunction(std::vector<double> grid, std::vector<double> values, double mass_above,
                           Interpolation interpolation)
    : grid_(std::move(grid)), values_(std::move(values)), mass_above_(mass_above), interpolation_(interpolation) {
  if (grid_.size() != values_.size()) throw ValidationError("tail grid and values differ in length");
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    if (!std::isfinite(grid_[i])) throw ValidationError("tail grid must be finite");
    if (i > 0 && !(grid_[i - 1] < grid_[i])) throw ValidationError("tail grid must be strictly increasing");
    if (!(values_[i] >= 0.0 && values_[i] <= 1.0)) throw ValidationError("tail values must lie in [0,1]");
  }
  if (!(mass_above_ >= 0.0 && mass_above_ <= 1.0)) throw ValidationError("mass above the grid must lie in [0,1]");
}

bool TailFunction::is_nonincreasing() const {
  for (std::size_t i = 1; i < values_.size(); ++i)
    if (values_[i] > values_[i - 1]) return false;
  return values_.empty() || mass_above_ <= values_.back();
}

double TailFunction::value_at(double x) const {
  if (grid_.empty()) return mass_above_;
  const double slack = 1e-12 * std::max(1.0, std::fabs(x));
  const auto it = std::lower_bound(grid_.begin(), grid_.end(), x - slack);
  if (it == grid_.end()) return mass_above_;
  const auto k = static_cast<std::size_t>(it - grid_.begin());
  if (k == 0 || interpolation_ == Interpolation::step || *it <= x + slack) return values_[k];
  const double a = values_[k - 1];
  const double b = values_[k];
  if (a <= 0.0 || b <= 0.0) return 0.0;
  const double t = (x - grid_[k - 1]) / (grid_[k] - grid_[k - 1]);
  return std::exp(std::log(a) + t * (std::log(b) - std::log(a)));
}

TailFunction least_log_concave_majorant(const TailFunction& tail) {
  if (tail.empty()) throw ValidationError("cannot build a majorant on an empty grid");
  const auto& g = tail.grid();
  const auto& v = tail.values();
  std::size_t first = g.size();
  std::size_t last = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (v[i] > 0.0) {
      first = std::min(first, i);
      last = i;
    }
  }
  std::vector<double> out(g.size(), 0.0);
  if (first == g.size())
    return TailFunction(g, std::move(out), 0.0, TailFunction::Interpolation::log_linear);

  // Upper hull of (g_i, log v_i) by a monotone chain.
  std::vector<std::size_t> hull;
  auto lv = [&](std::size_t i) { return std::log(v[i]); };
  for (std::size_t i = first; i <= last; ++i) {
    if (v[i] <= 0.0) continue;
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull.back();
      // Drop b when it lies on or below the chord a -> i.
      const double cross = (g[b] - g[a]) * (lv(i) - lv(a)) - (lv(b) - lv(a)) * (g[i] - g[a]);
      if (cross >= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  std::size_t seg = 0;
  for (std::size_t i = first; i <= last; ++i) {
    while (seg + 1 < hull.size() && hull[seg + 1] <= i) ++seg;
    if (hull[seg] == i) {
      out[i] = v[i];
      continue;
    }
    const std::size_t a = hull[seg];
    const std::size_t b = hull[seg + 1];
    const double t = (g[i] - g[a]) / (g[b] - g[a]);
    out[i] = std::min(1.0, std::exp(lv(a) + t * (lv(b) - lv(a))));
  }
  for (std::size_t i = first; i <= last; ++i) out[i] = std::max(out[i], v[i]);
  return TailFunction(g, std::move(out), 0.0, TailFunction::Interpolation::log_linear);
}

namespace {

void check_bernoulli(std::size_t n, double p, double lambda) {
  if (n == 0) throw ValidationError("n must be positive");
  if (n > 1000000) throw ValidationError("exact enumeration is limited to n <= 10^6");
  if (!(p > 0.0 && p < 1.0)) throw ValidationError("p must lie in (0,1)");
  if (!(lambda > 0.0)) throw ValidationError("lambda must be positive");
}

}  // namespace

TailFunction bernoulli_tn_tail_function(std::size_t n, double p, double lambda) {
  check_bernoulli(n, p, lambda);
  const double up = std::sqrt((1.0 - p) / p);
  const double down = -std::sqrt(p / (1.0 - p));
  const double scale = std::pow(static_cast<double>(n), 1.0 / (2.0 * lambda));
  const boost::math::binomial_distribution<double> binom(static_cast<double>(n), p);
  std::vector<double> grid(n + 1);
  std::vector<double> values(n + 1);
  double acc = 0.0;
  for (std::size_t j = n + 1; j-- > 0;) {
    const double k = static_cast<double>(j);
    grid[j] = (k * up + (static_cast<double>(n) - k) * down) / scale;
    acc += boost::math::pdf(binom, k);
    values[j] = std::min(1.0, acc);
  }
  values[0] = 1.0;
  return TailFunction(std::move(grid), std::move(values), 0.0, TailFunction::Interpolation::step);
}

double bernoulli_tn_tail(std::size_t n, double p, double lambda, double x) {
  return bernoulli_tn_tail_function(n, p, lambda).value_at(x);
}

double bernoulli_lc_bound(std::size_t n, double p, double lambda, double x) {
  const TailFunction majorant = least_log_concave_majorant(bernoulli_tn_tail_function(n, p, lambda));
  return std::min(1.0, c30() * majorant.value_at(x));
}

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::hoeffding: return "hoeffding";
    case BoundKind::normal_c3: return "normal-c3";
    case BoundKind::normal_c5: return "normal-c5";
    case BoundKind::bernoulli_lc: return "bernoulli-lc";
  }
  return "unknown";
}

BoundKind parse_bound_kind(std::string_view text) {
  if (text == "hoeffding") return BoundKind::hoeffding;
  if (text == "normal-c3" || text == "c3") return BoundKind::normal_c3;
  if (text == "normal-c5" || text == "c5") return BoundKind::normal_c5;
  if (text == "bernoulli-lc") return BoundKind::bernoulli_lc;
  throw ValidationError("unknown bound kind '" + std::string(text) + "'");
}

void BoundSpec::validate() const {
  if (kind == BoundKind::bernoulli_lc) check_bernoulli(n, p, lambda);
}

double BoundSpec::evaluate(double x) const {
  switch (kind) {
    case BoundKind::hoeffding: return x >= 0.0 ? hoeffding_bound(x) : 1.0;
    case BoundKind::normal_c3: return normal_c3_bound(x);
    case BoundKind::normal_c5: return normal_c5_bound(x);
    case BoundKind::bernoulli_lc: return bernoulli_lc_bound(n, p, lambda, x);
  }
  return 1.0;
}

}  // namespace recipro
