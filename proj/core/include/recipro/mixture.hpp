#pragma once

#include <functional>
#include <string_view>
#include <vector>

#include "recipro/dist.hpp"
#include "recipro/rational.hpp"
#include "recipro/reciprocator.hpp"

namespace recipro {

/// Law on {c, d} with c <= 0 <= d and mean zero; the point mass at zero when
/// c = d = 0.
class TwoPointZeroMeanDist {
 public:
  TwoPointZeroMeanDist() = default;
  /// Throws ValidationError unless c < 0 < d or c = d = 0.
  TwoPointZeroMeanDist(Rational c, Rational d);

  const Rational& c() const { return c_; }
  const Rational& d() const { return d_; }
  /// P(D = d) = |c| / (|c| + d); zero for the point mass.
  const Rational& p_d() const { return p_d_; }
  Rational p_c() const { return is_degenerate() ? Rational(1) : Rational(1 - p_d_); }
  bool is_degenerate() const { return d_ == 0; }

  ZeroMeanDiscreteDist as_dist() const;

  friend bool operator==(const TwoPointZeroMeanDist&, const TwoPointZeroMeanDist&) = default;

 private:
  Rational c_ = 0;
  Rational d_ = 0;
  Rational p_d_ = 0;
};

enum class MixtureIndex { W, Y };

std::string_view to_string(MixtureIndex index);

struct MixtureComponent {
  Rational v;
  Rational weight;
  TwoPointZeroMeanDist component;

  friend bool operator==(const MixtureComponent&, const MixtureComponent&) = default;
};

/// Weighted family of two-point zero-mean laws indexed by the value of W
/// (gap d - c) or Y (product |c|·d).
class MixtureDecomposition {
 public:
  /// Validates weights (positive, summing to one), strictly increasing
  /// indices and the index identity of each component.
  MixtureDecomposition(MixtureIndex index, std::vector<MixtureComponent> components);

  MixtureIndex index() const { return index_; }
  const std::vector<MixtureComponent>& components() const { return components_; }
  /// Throws ValidationError when v is not an index value.
  const MixtureComponent& at(const Rational& v) const;

  friend bool operator==(const MixtureDecomposition&, const MixtureDecomposition&) = default;

 private:
  MixtureIndex index_;
  std::vector<MixtureComponent> components_;
};

/// One cell of the exact joint law of (X, r(X,U_X)): atom x on the
/// u-interval of one branch.
struct JointOutcome {
  Rational x;
  Rational partner;
  Rational w;  // |x - partner|
  Rational y;  // |x·partner|
  Rational probability;
};

/// Enumerates every atom and every u-branch of r(x,·). Probabilities sum to
/// one exactly.
std::vector<JointOutcome> joint_law(const DiscreteReciprocator& recip);

MixtureDecomposition decompose_w(const DiscreteReciprocator& recip);
MixtureDecomposition decompose_w(const ZeroMeanDiscreteDist& dist);
MixtureDecomposition decompose_y(const DiscreteReciprocator& recip);
MixtureDecomposition decompose_y(const ZeroMeanDiscreteDist& dist);

/// Σ weight · component as one discrete law.
ZeroMeanDiscreteDist recompose(const MixtureDecomposition& mix);

/// E f(D_v) for the component indexed by v.
double expectation_under_component(const std::function<double(double)>& f, const Rational& v,
                                   const MixtureDecomposition& mix);
Rational expectation_under_component_exact(const std::function<Rational(const Rational&)>& f,
                                           const Rational& v, const MixtureDecomposition& mix);

}  // namespace recipro
