#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "recipro/rational.hpp"

namespace recipro {

struct Atom {
  Rational value;
  Rational weight;

  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite discrete law with exact weights and mean exactly zero. Atoms are
/// kept strictly increasing in value. Immutable once built.
class ZeroMeanDiscreteDist {
 public:
  /// Validates without modifying: positive weights summing to one, strictly
  /// increasing values, zero mean. Throws ValidationError otherwise.
  static ZeroMeanDiscreteDist from_atoms(std::vector<Atom> atoms);

  /// The point mass at zero.
  static ZeroMeanDiscreteDist degenerate();

  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  /// True for the point mass at zero.
  bool is_degenerate() const { return atoms_.size() == 1 && atoms_.front().value == 0; }

  /// Index of the atom at `x`, if any.
  std::optional<std::size_t> find(const Rational& x) const;

  /// P(X = x); zero off the support.
  Rational mass_at(const Rational& x) const;

  /// ½ E|X|.
  Rational half_mean_abs() const;

  /// Law of gamma * X for gamma > 0.
  ZeroMeanDiscreteDist scaled(const Rational& gamma) const;

  /// Law of -X.
  ZeroMeanDiscreteDist negated() const;

  friend bool operator==(const ZeroMeanDiscreteDist&, const ZeroMeanDiscreteDist&) = default;

 private:
  explicit ZeroMeanDiscreteDist(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {}
  std::vector<Atom> atoms_;
};

/// Merges duplicate values and shifts every atom by the exact mean.
/// Throws ValidationError on an empty list, a nonpositive weight, or weights
/// that do not sum to one.
ZeroMeanDiscreteDist center(std::span<const Atom> raw_atoms);

/// One jump of G on one side of zero: the atom's absolute value `x`
/// together with G just inside of it (`before`) and at it (`at`).
struct CurveStep {
  Rational x;  // |atom|, strictly positive
  Rational before;
  Rational at;
};

/// Exact partial-expectation curve of a discrete zero-mean law:
///   G(x) = E X 1{0 < X <= x}      for x >= 0,
///   G(x) = E (-X) 1{x <= X < 0}   for x <= 0.
/// Each side is a right-continuous (in |x|) step function rising to m = ½E|X|.
class DiscreteCurve {
 public:
  explicit DiscreteCurve(const ZeroMeanDiscreteDist& dist);

  Rational eval(const Rational& x) const;
  /// G(x-), the limit from the zero side, for x >= 0.
  Rational eval_left(const Rational& x) const;
  /// G(x+), the limit from the zero side, for x <= 0.
  Rational eval_right(const Rational& x) const;
  Rational mass() const { return mass_; }

  /// Positive atoms in increasing order.
  const std::vector<CurveStep>& positive_steps() const { return positive_; }
  /// Negative atoms in increasing order of |x|.
  const std::vector<CurveStep>& negative_steps() const { return negative_; }

 private:
  std::vector<CurveStep> positive_;
  std::vector<CurveStep> negative_;
  Rational mass_;
};

DiscreteCurve partial_expectation(const ZeroMeanDiscreteDist& dist);

/// Atomless law described by its distribution function, optionally with a
/// closed-form partial-expectation curve that bypasses integration.
struct ContinuousDistSpec {
  std::function<double(double)> cdf;
  std::function<double(double)> partial_expectation;  // optional G(x)
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  double tolerance = 1e-10;
};

/// Floating-point G for an atomless law; one-sided limits coincide with G.
class ContinuousCurve {
 public:
  double eval(double x) const;
  double eval_left(double x) const { return eval(x); }
  double eval_right(double x) const { return eval(x); }
  double mass() const { return mass_; }
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  double tolerance() const { return tolerance_; }

 private:
  friend ContinuousCurve curve_from_continuous(const ContinuousDistSpec& spec);
  ContinuousCurve() = default;

  double raw(double x) const;

  std::function<double(double)> cdf_;
  std::function<double(double)> direct_;
  double lower_ = 0.0;
  double upper_ = 0.0;
  double tolerance_ = 0.0;
  double mass_ = 0.0;
};

/// Builds G by adaptive Gauss-Kronrod integration of
///   G(x) = ∫_0^x (F(x) - F(t)) dt,  G(-x) = ∫_{-x}^0 (F(t) - F(-x)) dt,
/// or wraps the supplied G. Throws ValidationError if the two one-sided
/// masses differ by more than the tolerance (mean not zero) and
/// NumericalError if integration does not converge.
ContinuousCurve curve_from_continuous(const ContinuousDistSpec& spec);

}  // namespace recipro
