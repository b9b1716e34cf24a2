#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "recipro/dist.hpp"
#include "recipro/rational.hpp"

namespace recipro {

/// What the statistics layer needs from a reciprocating function: support
/// membership, atom detection (decides whether the randomizer applies) and
/// r(x,u) in floating point.
class ReciprocatingFunction {
 public:
  virtual ~ReciprocatingFunction() = default;
  virtual bool in_support(double x) const = 0;
  virtual bool has_atom(double x) const = 0;
  virtual double reciprocal_at(double x, double u) const = 0;
};

enum class Side { negative, zero, positive };

/// Membership of a point in the sets M (every left/right neighbourhood
/// carries mass), N (not an atom) and L (an empty open gap adjoins the point
/// on the zero side). Only decidable on the discrete pathway.
struct SupportClassification {
  Rational point;
  Side side = Side::zero;
  bool in_M = false;
  bool in_N = false;
  bool in_L = false;
};

/// c(v), d(v) and τ(v) = |c(v)|·d(v) tabulated at every width v the discrete
/// law produces, plus the h-interval (level_lo, level_hi] on which w ≡ v.
struct PairPoint {
  Rational v;
  Rational c;
  Rational d;
  Rational tau;
  Rational level_lo;
  Rational level_hi;  // = h_v
};

class PairFunctions {
 public:
  PairFunctions() = default;
  explicit PairFunctions(std::vector<PairPoint> points) : points_(std::move(points)) {}

  /// Strictly increasing in v; v > 0 throughout.
  const std::vector<PairPoint>& points() const { return points_; }

  /// Defined on V ∪ {0}; throws ValidationError elsewhere.
  Rational c(const Rational& v) const;
  Rational d(const Rational& v) const;
  Rational tau(const Rational& v) const;
  bool contains(const Rational& v) const { return find(v) != nullptr; }

 private:
  const PairPoint* find(const Rational& v) const;
  const PairPoint& at(const Rational& v) const;
  std::vector<PairPoint> points_;
};

/// A u-interval (u_lo, u_hi] on which r(x, ·) is constant.
struct Branch {
  Rational u_lo;
  Rational u_hi;
  Rational partner;
};

/// Exact reciprocating function of a finite discrete zero-mean law.
class DiscreteReciprocator final : public ReciprocatingFunction {
 public:
  explicit DiscreteReciprocator(ZeroMeanDiscreteDist dist);

  const ZeroMeanDiscreteDist& dist() const { return dist_; }
  const DiscreteCurve& curve() const { return curve_; }
  Rational mass() const { return curve_.mass(); }

  /// inf{x >= 0 : G(x) >= h}, h in [0, m].
  Rational x_plus(const Rational& h) const;
  /// sup{x <= 0 : G(x) >= h}, h in [0, m].
  Rational x_minus(const Rational& h) const;

  /// H(x,u): G interpolated across the jump at x, from the zero side.
  Rational level(const Rational& x, const Rational& u) const;

  /// Position of h inside the jump of G at x_±(h), h in (0, m].
  Rational u_plus(const Rational& h) const;
  Rational u_minus(const Rational& h) const;

  /// r(x,u); zero at x = 0.
  Rational reciprocal(const Rational& x, const Rational& u) const;

  /// w(h) = x_+(h) - x_-(h).
  Rational width(const Rational& h) const;

  /// h_v = max{h in (0,m] : w(h) <= v}, v in V.
  Rational max_level_for_width(const Rational& v) const;

  const PairFunctions& pair_functions() const { return pairs_; }

  SupportClassification classify(const Rational& x) const;

  /// Whether (x,u) lies in the good set on which r is an involution.
  bool in_good_set(const Rational& x, const Rational& u) const;

  /// Partition of (0,1] into u-intervals with constant partner r(x,·) for
  /// the atom at x. Throws ValidationError if x is not an atom.
  const std::vector<Branch>& branches(const Rational& x) const;
  const std::vector<Branch>& branches_of(std::size_t atom_index) const { return branches_[atom_index]; }

  /// Every finite level at which x_+ or x_- jumps, i.e. the right ends of the
  /// intervals on which w is constant. Sorted, last element m.
  std::vector<Rational> level_breakpoints() const;

  std::optional<std::size_t> atom_index_for(double x) const;

  bool in_support(double x) const override { return atom_index_for(x).has_value(); }
  bool has_atom(double x) const override { return atom_index_for(x).has_value(); }
  /// Throws ValidationError off the support.
  double reciprocal_at(double x, double u) const override;

 private:
  void check_level(const Rational& h) const;

  ZeroMeanDiscreteDist dist_;
  DiscreteCurve curve_;
  PairFunctions pairs_;
  std::vector<std::vector<Branch>> branches_;
  std::vector<double> atom_doubles_;
  std::vector<std::vector<double>> partner_doubles_;
};

struct ReciprocatorTolerances {
  double level = 1e-12;     // on h
  double position = 1e-10;  // on x, relative to max(1,|x|)
};

/// Values of the pair functions at one width on the continuous pathway.
struct PairValue {
  double v = 0.0;
  double c = 0.0;
  double d = 0.0;
  double tau = 0.0;
};

/// Reciprocating function of an atomless law, by bisection on G.
class ContinuousReciprocator final : public ReciprocatingFunction {
 public:
  explicit ContinuousReciprocator(ContinuousCurve curve, ReciprocatorTolerances tol = {});

  const ContinuousCurve& curve() const { return curve_; }
  double mass() const { return curve_.mass(); }

  /// May return +infinity at h = m for unbounded support.
  double x_plus(double h) const;
  /// May return -infinity at h = m for unbounded support.
  double x_minus(double h) const;
  double level(double x, double /*u*/) const { return curve_.eval(x); }
  double u_plus(double h) const;
  double u_minus(double h) const { return u_plus(h); }
  double reciprocal(double x, double u = 1.0) const;
  double width(double h) const { return x_plus(h) - x_minus(h); }
  double max_level_for_width(double v) const;
  PairValue pair_at(double v) const;

  bool in_support(double x) const override;
  bool has_atom(double) const override { return false; }
  double reciprocal_at(double x, double u) const override { return reciprocal(x, u); }

 private:
  double search(double h, bool positive) const;
  void check_level(double h) const;

  ContinuousCurve curve_;
  ReciprocatorTolerances tol_;
};

}  // namespace recipro
