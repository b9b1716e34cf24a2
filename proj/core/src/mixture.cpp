#include "recipro/mixture.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "recipro/errors.hpp"

namespace recipro {

TwoPointZeroMeanDist::TwoPointZeroMeanDist(Rational c, Rational d) : c_(std::move(c)), d_(std::move(d)) {
  const bool degenerate = c_ == 0 && d_ == 0;
  if (!degenerate && !(c_ < 0 && d_ > 0))
    throw ValidationError("two-point law needs c < 0 < d, got c = " + recipro::to_string(c_) +
                          ", d = " + recipro::to_string(d_));
  p_d_ = degenerate ? Rational(0) : Rational(-c_ / (d_ - c_));
}

ZeroMeanDiscreteDist TwoPointZeroMeanDist::as_dist() const {
  if (is_degenerate()) return ZeroMeanDiscreteDist::degenerate();
  return ZeroMeanDiscreteDist::from_atoms({Atom{c_, p_c()}, Atom{d_, p_d_}});
}

std::string_view to_string(MixtureIndex index) { return index == MixtureIndex::W ? "W" : "Y"; }

MixtureDecomposition::MixtureDecomposition(MixtureIndex index, std::vector<MixtureComponent> components)
    : index_(index), components_(std::move(components)) {
  if (components_.empty()) throw ValidationError("mixture has no components");
  Rational total = 0;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    const auto& comp = components_[i];
    if (comp.weight <= 0) throw ValidationError("mixture weights must be positive");
    if (i > 0 && !(components_[i - 1].v < comp.v))
      throw ValidationError("mixture index values must be strictly increasing");
    const auto& two = comp.component;
    const Rational expected = index_ == MixtureIndex::W ? Rational(two.d() - two.c())
                                                        : Rational(-two.c() * two.d());
    if (expected != comp.v)
      throw ValidationError("component at " + recipro::to_string(comp.v) + " violates the " +
                            std::string(recipro::to_string(index_)) + " index identity");
    total += comp.weight;
  }
  if (total != 1) throw ValidationError("mixture weights sum to " + recipro::to_string(total));
}

const MixtureComponent& MixtureDecomposition::at(const Rational& v) const {
  const auto it = std::lower_bound(components_.begin(), components_.end(), v,
                                   [](const MixtureComponent& c, const Rational& x) { return c.v < x; });
  if (it == components_.end() || it->v != v)
    throw ValidationError("no mixture component at " + recipro::to_string(v));
  return *it;
}

std::vector<JointOutcome> joint_law(const DiscreteReciprocator& recip) {
  std::vector<JointOutcome> out;
  const auto& atoms = recip.dist().atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (const auto& br : recip.branches_of(i)) {
      JointOutcome o;
      o.x = atoms[i].value;
      o.partner = br.partner;
      o.w = abs(Rational(o.x - o.partner));
      o.y = abs(Rational(o.x * o.partner));
      o.probability = atoms[i].weight * (br.u_hi - br.u_lo);
      out.push_back(std::move(o));
    }
  }
  return out;
}

namespace {

struct Group {
  Rational total = 0;
  std::map<Rational, Rational> by_x;
};

MixtureDecomposition decompose(const DiscreteReciprocator& recip, MixtureIndex index) {
  std::map<Rational, Group> groups;  // keyed by W
  for (const auto& o : joint_law(recip)) {
    auto& g = groups[o.w];
    g.total += o.probability;
    g.by_x[o.x] += o.probability;
  }
  const PairFunctions& pairs = recip.pair_functions();
  std::vector<MixtureComponent> components;
  for (const auto& [v, group] : groups) {
    const TwoPointZeroMeanDist two(pairs.c(v), pairs.d(v));
    // The conditional law read off the enumeration must be the two-point law
    // built from the pair functions.
    std::map<Rational, Rational> expected;
    if (two.is_degenerate()) {
      expected[Rational(0)] = group.total;
    } else {
      expected[two.c()] = group.total * two.p_c();
      expected[two.d()] = group.total * two.p_d();
    }
    if (expected != group.by_x)
      throw std::logic_error("conditional law of X given W = " + recipro::to_string(v) +
                             " disagrees with the pair functions");
    const Rational key = index == MixtureIndex::W ? v : pairs.tau(v);
    components.push_back(MixtureComponent{key, group.total, two});
  }
  // τ is strictly increasing, so re-indexing by Y keeps the order.
  for (std::size_t i = 1; i < components.size(); ++i)
    if (!(components[i - 1].v < components[i].v))
      throw std::logic_error("pair product is not strictly increasing in the width");
  return MixtureDecomposition(index, std::move(components));
}

}  // namespace

MixtureDecomposition decompose_w(const DiscreteReciprocator& recip) { return decompose(recip, MixtureIndex::W); }
MixtureDecomposition decompose_w(const ZeroMeanDiscreteDist& dist) { return decompose_w(DiscreteReciprocator(dist)); }
MixtureDecomposition decompose_y(const DiscreteReciprocator& recip) { return decompose(recip, MixtureIndex::Y); }
MixtureDecomposition decompose_y(const ZeroMeanDiscreteDist& dist) { return decompose_y(DiscreteReciprocator(dist)); }

ZeroMeanDiscreteDist recompose(const MixtureDecomposition& mix) {
  std::map<Rational, Rational> mass;
  for (const auto& comp : mix.components()) {
    const auto& two = comp.component;
    if (two.is_degenerate()) {
      mass[Rational(0)] += comp.weight;
    } else {
      mass[two.c()] += comp.weight * two.p_c();
      mass[two.d()] += comp.weight * two.p_d();
    }
  }
  std::vector<Atom> atoms;
  for (const auto& [x, p] : mass) atoms.push_back(Atom{x, p});
  return ZeroMeanDiscreteDist::from_atoms(std::move(atoms));
}

double expectation_under_component(const std::function<double(double)>& f, const Rational& v,
                                   const MixtureDecomposition& mix) {
  const auto& two = mix.at(v).component;
  if (two.is_degenerate()) return f(0.0);
  return f(to_double(two.c())) * to_double(two.p_c()) + f(to_double(two.d())) * to_double(two.p_d());
}

Rational expectation_under_component_exact(const std::function<Rational(const Rational&)>& f,
                                           const Rational& v, const MixtureDecomposition& mix) {
  const auto& two = mix.at(v).component;
  if (two.is_degenerate()) return f(Rational(0));
  return Rational(f(two.c()) * two.p_c() + f(two.d()) * two.p_d());
}

}  // namespace recipro
