#include "recipro/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "parallel.hpp"
#include "recipro/errors.hpp"
#include "recipro/random.hpp"
#include "recipro/reciprocator.hpp"

namespace recipro {

namespace {

constexpr std::size_t kMaxOutcomes = 1000000;
constexpr std::size_t kMinReplications = 10000;
constexpr std::size_t kChunk = 4096;

double slack(double x) { return 1e-12 * std::max(1.0, std::fabs(x)); }

double statistic_value(double sum_x, double sum_sq_x, double sum_sq_w, double sum_y_pow, Statistic statistic,
                       double lambda) {
  double denominator = 0.0;
  switch (statistic) {
    case Statistic::s_w: denominator = 0.5 * std::sqrt(sum_sq_w); break;
    case Statistic::s_y: denominator = std::pow(sum_y_pow, 1.0 / (2.0 * lambda)); break;
    case Statistic::classic: denominator = std::sqrt(sum_sq_x); break;
  }
  return denominator == 0.0 ? 0.0 : sum_x / denominator;
}

std::size_t outcome_count(std::span<const std::vector<Cell>> coordinates) {
  std::size_t total = 1;
  for (const auto& c : coordinates) {
    if (c.empty()) return 0;
    if (total > kMaxOutcomes / c.size() + 1) return kMaxOutcomes + 1;
    total *= c.size();
  }
  return total;
}

std::vector<std::vector<Cell>> branch_cells(std::span<const ZeroMeanDiscreteDist> dists) {
  std::vector<std::vector<Cell>> out;
  out.reserve(dists.size());
  for (const auto& d : dists) out.push_back(cells_from_branches(d));
  return out;
}

}  // namespace

std::string_view to_string(Statistic statistic) {
  switch (statistic) {
    case Statistic::s_w: return "S_W";
    case Statistic::s_y: return "S_Y";
    case Statistic::classic: return "S";
  }
  return "unknown";
}

std::string_view to_string(VerifyMode mode) {
  switch (mode) {
    case VerifyMode::automatic: return "automatic";
    case VerifyMode::exact: return "exact";
    case VerifyMode::monte_carlo: return "monte-carlo";
  }
  return "unknown";
}

std::vector<Cell> cells_from_branches(const ZeroMeanDiscreteDist& dist) {
  std::vector<Cell> out;
  for (auto& o : joint_law(DiscreteReciprocator(dist)))
    out.push_back(Cell{std::move(o.x), std::move(o.w), std::move(o.y), std::move(o.probability)});
  return out;
}

std::vector<Cell> cells_from_mixture(const MixtureDecomposition& w_mixture) {
  if (w_mixture.index() != MixtureIndex::W) throw ValidationError("expected a W-indexed mixture");
  std::vector<Cell> out;
  for (const auto& comp : w_mixture.components()) {
    const auto& two = comp.component;
    if (two.is_degenerate()) {
      out.push_back(Cell{0, 0, 0, comp.weight});
      continue;
    }
    const Rational y = -two.c() * two.d();
    out.push_back(Cell{two.c(), comp.v, y, Rational(comp.weight * two.p_c())});
    out.push_back(Cell{two.d(), comp.v, y, Rational(comp.weight * two.p_d())});
  }
  return out;
}

ExactLaw::ExactLaw(std::vector<LawPoint> support) {
  std::sort(support.begin(), support.end(), [](const LawPoint& a, const LawPoint& b) { return a.value < b.value; });
  for (auto& p : support) {
    if (!support_.empty() && std::fabs(p.value - support_.back().value) <= slack(support_.back().value))
      support_.back().weight += p.weight;
    else
      support_.push_back(std::move(p));
  }
}

Rational ExactLaw::total_weight() const {
  Rational total = 0;
  for (const auto& p : support_) total += p.weight;
  return total;
}

Rational ExactLaw::tail_exact(double x) const {
  Rational total = 0;
  const double threshold = x - slack(x);
  for (auto it = support_.rbegin(); it != support_.rend() && it->value >= threshold; ++it) total += it->weight;
  return total;
}

double ExactLaw::expectation(const std::function<double(double)>& f) const {
  double total = 0.0;
  for (const auto& p : support_) total += f(p.value) * to_double(p.weight);
  return total;
}

ExactLaw exact_law_from_cells(std::span<const std::vector<Cell>> coordinates, Statistic statistic, double lambda) {
  if (coordinates.empty()) throw ValidationError("need at least one coordinate");
  if (statistic == Statistic::s_y && !(lambda > 0.0)) throw ValidationError("lambda must be positive");
  if (outcome_count(coordinates) > kMaxOutcomes)
    throw ValidationError("exact enumeration is limited to 10^6 outcomes");

  struct Num {
    double x, w2, x2, ypow;
  };
  std::vector<std::vector<Num>> nums(coordinates.size());
  for (std::size_t i = 0; i < coordinates.size(); ++i) {
    for (const auto& c : coordinates[i]) {
      const double x = to_double(c.x);
      const double w = to_double(c.w);
      const double y = to_double(c.y);
      nums[i].push_back(Num{x, w * w, x * x, statistic == Statistic::s_y ? std::pow(y, lambda) : 0.0});
    }
  }

  std::vector<LawPoint> points;
  const std::size_t n = coordinates.size();
  std::vector<Rational> weight(n + 1);
  std::vector<Num> partial(n + 1, Num{0, 0, 0, 0});
  weight[0] = 1;
  std::vector<std::size_t> index(n, 0);
  // Odometer over the product, refreshing partial sums from the changed digit.
  std::size_t from = 0;
  while (true) {
    for (std::size_t i = from; i < n; ++i) {
      const Num& c = nums[i][index[i]];
      partial[i + 1] = Num{partial[i].x + c.x, partial[i].w2 + c.w2, partial[i].x2 + c.x2, partial[i].ypow + c.ypow};
      weight[i + 1] = weight[i] * coordinates[i][index[i]].probability;
    }
    const Num& s = partial[n];
    points.push_back(LawPoint{statistic_value(s.x, s.x2, s.w2, s.ypow, statistic, lambda), weight[n]});
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++index[k] < coordinates[k].size()) break;
      index[k] = 0;
      if (k == 0) return ExactLaw(std::move(points));
    }
    from = k;
  }
}

ExactSwLaw exact_sw_law(std::span<const ZeroMeanDiscreteDist> dists) {
  if (dists.empty() || dists.size() > 4) throw ValidationError("exact S_W law takes one to four laws");
  const auto cells = branch_cells(dists);
  return exact_law_from_cells(cells, Statistic::s_w);
}

ExactSwLaw exact_sw_law_from_mixture(std::span<const ZeroMeanDiscreteDist> dists) {
  if (dists.empty() || dists.size() > 4) throw ValidationError("exact S_W law takes one to four laws");
  std::vector<std::vector<Cell>> cells;
  for (const auto& d : dists) cells.push_back(cells_from_mixture(decompose_w(d)));
  return exact_law_from_cells(cells, Statistic::s_w);
}

ExactLaw exact_sy_law(std::span<const ZeroMeanDiscreteDist> dists, double lambda) {
  if (dists.empty() || dists.size() > 4) throw ValidationError("exact S_Y law takes one to four laws");
  const auto cells = branch_cells(dists);
  return exact_law_from_cells(cells, Statistic::s_y, lambda);
}

ExactLaw exact_rademacher_law(std::span<const double> a) {
  const std::size_t n = a.size();
  if (n == 0 || n > 20) throw ValidationError("Rademacher enumeration takes 1 to 20 coefficients");
  const Rational weight(1, 1UL << n);
  std::vector<LawPoint> points;
  points.reserve(std::size_t{1} << n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += ((mask >> i) & 1U) ? a[i] : -a[i];
    points.push_back(LawPoint{s, weight});
  }
  return ExactLaw(std::move(points));
}

double normal_positive_part_moment(int alpha, double t) {
  if (alpha < 0) throw ValidationError("moment order must be nonnegative");
  boost::math::quadrature::exp_sinh<double> integrator;
  // s^alpha·φ(s+t) in log space: the power overflows where the density underflows.
  const double log_norm = -0.5 * std::log(2.0 * std::numbers::pi);
  auto f = [&](double s) {
    if (s <= 0.0) return alpha == 0 ? normal_density(t) : 0.0;
    const double z = s + t;
    return std::exp(alpha * std::log(s) - 0.5 * z * z + log_norm);
  };
  double error = 0.0;
  const double value = integrator.integrate(f, 1e-15, &error);
  if (!std::isfinite(value)) throw NumericalError("normal moment quadrature failed");
  return value;
}

namespace {

// N replications of the statistic, in replication order.
std::vector<double> simulate(std::span<const ZeroMeanDiscreteDist> dists, Statistic statistic, double lambda,
                             std::size_t replications, std::uint64_t seed) {
  if (dists.empty()) throw ValidationError("need at least one law");
  struct Sampler {
    DiscreteReciprocator recip;
    std::vector<double> values;
    std::vector<double> cumulative;
  };
  std::vector<Sampler> samplers;
  samplers.reserve(dists.size());
  for (const auto& d : dists) {
    Sampler s{DiscreteReciprocator(d), {}, {}};
    Rational running = 0;
    for (const auto& a : d.atoms()) {
      running += a.weight;
      s.values.push_back(to_double(a.value));
      s.cumulative.push_back(to_double(running));
    }
    s.cumulative.back() = 1.0;
    samplers.push_back(std::move(s));
  }
  std::vector<double> out(replications);
  const std::size_t chunks = (replications + kChunk - 1) / kChunk;
  detail::parallel_chunks(chunks, 1, [&](std::size_t begin, std::size_t end) {
    for (std::size_t chunk = begin; chunk < end; ++chunk) {
      Engine engine = make_engine(seed, chunk);
      const std::size_t last = std::min(replications, (chunk + 1) * kChunk);
      for (std::size_t r = chunk * kChunk; r < last; ++r) {
        double sx = 0.0, sx2 = 0.0, sw2 = 0.0, sy = 0.0;
        for (const auto& s : samplers) {
          const double pick = uniform01(engine);
          const double u = uniform01(engine);
          const auto k = static_cast<std::size_t>(
              std::upper_bound(s.cumulative.begin(), s.cumulative.end(), pick) - s.cumulative.begin());
          const double x = s.values[std::min(k, s.values.size() - 1)];
          const double partner = s.recip.reciprocal_at(x, u);
          const double w = std::fabs(x - partner);
          sx += x;
          sx2 += x * x;
          sw2 += w * w;
          if (statistic == Statistic::s_y) sy += std::pow(std::fabs(x * partner), lambda);
        }
        out[r] = statistic_value(sx, sx2, sw2, sy, statistic, lambda);
      }
    }
  });
  return out;
}

bool exact_feasible(std::span<const ZeroMeanDiscreteDist> dists, std::vector<std::vector<Cell>>& cells) {
  if (dists.empty() || dists.size() > 4) return false;
  cells = branch_cells(dists);
  return outcome_count(cells) <= kMaxOutcomes;
}

bool choose_exact(std::span<const ZeroMeanDiscreteDist> dists, VerifyMode mode, std::size_t N,
                  std::vector<std::vector<Cell>>& cells) {
  if (mode == VerifyMode::monte_carlo) {
    if (N < kMinReplications) throw ValidationError("Monte Carlo checks need N >= 10^4");
    return false;
  }
  const bool feasible = exact_feasible(dists, cells);
  if (mode == VerifyMode::exact && !feasible)
    throw ValidationError("exact mode needs at most four laws and at most 10^6 outcomes");
  if (!feasible && N < kMinReplications) throw ValidationError("Monte Carlo checks need N >= 10^4");
  return feasible;
}

std::vector<double> grid_points(const Grid& grid, const ExactLaw* law) {
  if (!grid.support) return grid.points;
  if (law == nullptr) throw ValidationError("support grids are only available in exact mode");
  std::vector<double> out;
  for (const auto& p : law->support())
    if (p.value > 0.0) out.push_back(p.value);
  return out;
}

void finish(VerificationReport& report) {
  report.pass = std::all_of(report.rows.begin(), report.rows.end(), [](const ReportRow& r) { return r.pass; });
}

ReportRow make_row(std::string bound, double point, double lhs, double se, double rhs, bool exact) {
  ReportRow row;
  row.bound = std::move(bound);
  row.point = point;
  row.lhs = lhs;
  row.stderr_ = se;
  row.rhs = rhs;
  row.margin = exact ? rhs - lhs : rhs - (lhs - 3.0 * se);
  row.pass = row.margin >= 0.0;
  return row;
}

VerificationReport tail_report(std::span<const ZeroMeanDiscreteDist> dists, const BoundSpec& bound,
                               Statistic statistic, double lambda, const Grid& grid, std::size_t N,
                               std::uint64_t seed, VerifyMode mode) {
  bound.validate();
  VerificationReport report;
  report.statistic = std::string(to_string(statistic));
  report.seed = seed;
  std::vector<std::vector<Cell>> cells;
  const std::string label(to_string(bound.kind));
  if (choose_exact(dists, mode, N, cells)) {
    report.mode = "exact";
    const ExactLaw law = exact_law_from_cells(cells, statistic, lambda);
    for (double x : grid_points(grid, &law))
      report.rows.push_back(make_row(label, x, law.tail(x), 0.0, bound.evaluate(x), true));
  } else {
    report.mode = "monte-carlo";
    report.replications = N;
    const auto points = grid_points(grid, nullptr);
    const TailEstimate est = estimate_tail(dists, statistic, lambda, points, N, seed);
    for (std::size_t i = 0; i < points.size(); ++i)
      report.rows.push_back(
          make_row(label, points[i], est.probability[i], est.stderr_[i], bound.evaluate(points[i]), false));
  }
  finish(report);
  return report;
}

}  // namespace

TailEstimate estimate_tail(std::span<const ZeroMeanDiscreteDist> dists, Statistic statistic, double lambda,
                           std::span<const double> grid, std::size_t replications, std::uint64_t seed) {
  if (replications == 0) throw ValidationError("need at least one replication");
  if (statistic == Statistic::s_y && !(lambda > 0.0)) throw ValidationError("lambda must be positive");
  std::vector<double> values = simulate(dists, statistic, lambda, replications, seed);
  std::sort(values.begin(), values.end());
  TailEstimate est;
  est.grid.assign(grid.begin(), grid.end());
  est.replications = replications;
  const auto total = static_cast<double>(replications);
  for (double x : grid) {
    const auto it = std::lower_bound(values.begin(), values.end(), x - slack(x));
    const double p = static_cast<double>(values.end() - it) / total;
    est.probability.push_back(p);
    est.stderr_.push_back(std::sqrt(p * (1.0 - p) / total));
  }
  return est;
}

VerificationReport verify_tail_bound(std::span<const ZeroMeanDiscreteDist> dists, const BoundSpec& bound,
                                     const Grid& grid, std::size_t N, std::uint64_t seed, VerifyMode mode) {
  BoundSpec spec = bound;
  Statistic statistic = Statistic::s_w;
  if (spec.kind == BoundKind::bernoulli_lc) {
    spec.n = dists.size();
    statistic = Statistic::s_y;
  }
  VerificationReport report = tail_report(dists, spec, statistic, spec.lambda, grid, N, seed, mode);
  report.inequality = "tail:" + std::string(to_string(spec.kind));
  return report;
}

VerificationReport verify_moment_bound(std::span<const ZeroMeanDiscreteDist> dists, int alpha,
                                       std::span<const double> t_grid, std::size_t N, std::uint64_t seed,
                                       VerifyMode mode) {
  if (alpha != 3 && alpha != 5) throw ValidationError("moment class must be 3 or 5");
  VerificationReport report;
  report.inequality = "moment:H" + std::to_string(alpha);
  report.statistic = std::string(to_string(Statistic::s_w));
  report.seed = seed;
  const std::string label = "E max(Z-t,0)^" + std::to_string(alpha);
  auto f = [alpha](double t) { return [alpha, t](double x) { return x > t ? std::pow(x - t, alpha) : 0.0; }; };
  std::vector<std::vector<Cell>> cells;
  if (choose_exact(dists, mode, N, cells)) {
    report.mode = "exact";
    const ExactLaw law = exact_law_from_cells(cells, Statistic::s_w);
    for (double t : t_grid)
      report.rows.push_back(make_row(label, t, law.expectation(f(t)), 0.0, normal_positive_part_moment(alpha, t), true));
  } else {
    report.mode = "monte-carlo";
    report.replications = N;
    const std::vector<double> values = simulate(dists, Statistic::s_w, 1.0, N, seed);
    const auto total = static_cast<double>(N);
    for (double t : t_grid) {
      const auto ft = f(t);
      double sum = 0.0, sum_sq = 0.0;
      for (double v : values) {
        const double y = ft(v);
        sum += y;
        sum_sq += y * y;
      }
      const double mean = sum / total;
      const double var = std::max(0.0, sum_sq / total - mean * mean);
      report.rows.push_back(
          make_row(label, t, mean, std::sqrt(var / total), normal_positive_part_moment(alpha, t), false));
    }
  }
  finish(report);
  return report;
}

VerificationReport verify_sy_bound(std::span<const ZeroMeanDiscreteDist> dists, double p, double lambda,
                                   const Grid& grid, std::size_t N, std::uint64_t seed, VerifyMode mode) {
  if (!(p > 0.0 && p < 1.0)) throw PreconditionError("p must lie in (0,1)");
  const double threshold = lambda_star(p);
  if (!(lambda >= threshold))
    throw PreconditionError("lambda " + std::to_string(lambda) + " is below lambda*(p) = " + std::to_string(threshold));
  const Rational p_exact = rational_from_double(p);
  for (const auto& d : dists) {
    if (asymmetry_p(d) < p_exact)
      throw PreconditionError("a law has asymmetry parameter " + to_string(asymmetry_p(d)) + " below p");
  }
  BoundSpec bound;
  bound.kind = BoundKind::bernoulli_lc;
  bound.p = p;
  bound.lambda = lambda;
  bound.n = dists.size();
  VerificationReport report = tail_report(dists, bound, Statistic::s_y, lambda, grid, N, seed, mode);
  report.inequality = "sy-tail:bernoulli-lc";
  return report;
}

VerificationReport verify_rademacher(std::span<const double> a, const Grid& grid) {
  double norm = 0.0;
  for (double v : a) norm += v * v;
  if (std::fabs(norm - 1.0) > 1e-12) throw ValidationError("coefficients must have unit Euclidean norm");
  const ExactLaw law = exact_rademacher_law(a);
  VerificationReport report;
  report.inequality = "rademacher";
  report.statistic = "sum eps_i a_i";
  report.mode = "exact";
  std::vector<double> points;
  if (grid.support) {
    for (const auto& p : law.support()) points.push_back(p.value);
  } else {
    points = grid.points;
  }
  for (double x : points) {
    const double lhs = law.tail(x);
    if (x >= 0.0) report.rows.push_back(make_row("hoeffding", x, lhs, 0.0, hoeffding_bound(x), true));
    report.rows.push_back(make_row("normal-c3", x, lhs, 0.0, normal_c3_bound(x), true));
  }
  finish(report);
  return report;
}

std::vector<VerificationReport> run_checks(std::span<const CheckSpec> checks, std::uint64_t seed) {
  std::vector<VerificationReport> out;
  out.reserve(checks.size());
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const CheckSpec& c = checks[k];
    const std::uint64_t s = substream_seed(seed, k);
    VerificationReport r;
    switch (c.kind) {
      case CheckSpec::Kind::tail:
        r = verify_tail_bound(c.dists, c.bound, c.grid, c.replications, s, c.mode);
        break;
      case CheckSpec::Kind::moment:
        r = verify_moment_bound(c.dists, c.alpha, c.grid.points, c.replications, s, c.mode);
        break;
      case CheckSpec::Kind::sy_tail: {
        const double lambda = c.lambda > 0.0 ? c.lambda : lambda_star(c.p);
        r = verify_sy_bound(c.dists, c.p, lambda, c.grid, c.replications, s, c.mode);
        break;
      }
      case CheckSpec::Kind::rademacher:
        r = verify_rademacher(c.coefficients, c.grid);
        break;
    }
    r.id = c.id;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace recipro
