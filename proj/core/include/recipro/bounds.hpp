#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "recipro/dist.hpp"
#include "recipro/rational.hpp"
#include "recipro/reciprocator.hpp"

namespace recipro {

/// P(Z >= x) for Z ~ N(0,1).
double normal_tail(double x);
double normal_density(double x);

/// e^{-x²/2}, x >= 0.
double hoeffding_bound(double x);

/// 2e³/9 = 4.4634...
double c30();
/// 5!(e/5)⁵ = 5.699...
double c50();

/// min(1, c30·P(Z >= x)).
double normal_c3_bound(double x);
/// min(1, c50·P(Z >= x)).
double normal_c5_bound(double x);

/// Smallest admissible exponent for asymmetry parameter p in (0,1).
double lambda_star(double p);

/// Largest p with X/|r(X,U)|·1{X>0} <= (1-p)/p almost surely: 1/(1+ρ) with ρ
/// the largest ratio over positive atoms and positive-measure u-branches.
/// Throws ValidationError for a law without positive atoms.
Rational asymmetry_p(const DiscreteReciprocator& recip);
Rational asymmetry_p(const ZeroMeanDiscreteDist& dist);

/// A tail x ↦ P(T >= x) sampled on a grid. With step interpolation the
/// function is left-continuous and constant on (grid[k-1], grid[k]]; with
/// log-linear interpolation the log of the values is linear between points.
/// Left of the grid the first value applies; right of it, `mass_above`.
class TailFunction {
 public:
  enum class Interpolation { step, log_linear };

  TailFunction() = default;
  /// Throws ValidationError unless the grid is strictly increasing and the
  /// values lie in [0,1].
  TailFunction(std::vector<double> grid, std::vector<double> values, double mass_above = 0.0,
               Interpolation interpolation = Interpolation::step);

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  double mass_above() const { return mass_above_; }
  Interpolation interpolation() const { return interpolation_; }
  bool empty() const { return grid_.empty(); }

  bool is_nonincreasing() const;

  /// Grid points within a relative 1e-12 of x count as reached, so that
  /// support points recomputed by a different formula land on themselves.
  double value_at(double x) const;

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  double mass_above_ = 0.0;
  Interpolation interpolation_ = Interpolation::step;
};

/// Least log-concave majorant on the grid: exp of the upper concave hull of
/// the log-values. Zero values outside the positive stretch stay zero;
/// zeros inside it are lifted. Throws ValidationError on an empty grid.
TailFunction least_log_concave_majorant(const TailFunction& tail);

/// Exact law of T_n = (Z_1+…+Z_n)/n^{1/(2λ)} with Z_i i.i.d. standardized
/// Bernoulli(p): grid = the n+1 support points, values = P(T_n >= point).
TailFunction bernoulli_tn_tail_function(std::size_t n, double p, double lambda);

/// P(T_n >= x).
double bernoulli_tn_tail(std::size_t n, double p, double lambda, double x);

/// min(1, c30·P^LC(T_n >= x)), with P^LC built on the exact support of T_n.
double bernoulli_lc_bound(std::size_t n, double p, double lambda, double x);

enum class BoundKind { hoeffding, normal_c3, normal_c5, bernoulli_lc };

std::string_view to_string(BoundKind kind);
/// Accepts the canonical names plus the short CLI aliases (c3, c5).
BoundKind parse_bound_kind(std::string_view text);

struct BoundSpec {
  BoundKind kind = BoundKind::normal_c5;
  double p = 0.5;       // bernoulli_lc only
  double lambda = 1.0;  // bernoulli_lc only
  std::size_t n = 1;    // bernoulli_lc only

  /// Throws ValidationError when parameters are outside their domains.
  void validate() const;
  double evaluate(double x) const;
};

}  // namespace recipro
