#include "recipro/reciprocator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "recipro/errors.hpp"

namespace recipro {

const PairPoint* PairFunctions::find(const Rational& v) const {
  const auto it = std::lower_bound(points_.begin(), points_.end(), v,
                                   [](const PairPoint& p, const Rational& x) { return p.v < x; });
  if (it == points_.end() || it->v != v) return nullptr;
  return &*it;
}

const PairPoint& PairFunctions::at(const Rational& v) const {
  const PairPoint* p = find(v);
  if (p == nullptr) throw ValidationError("width " + to_string(v) + " is not in the range of w");
  return *p;
}

Rational PairFunctions::c(const Rational& v) const { return v == 0 ? Rational(0) : at(v).c; }
Rational PairFunctions::d(const Rational& v) const { return v == 0 ? Rational(0) : at(v).d; }
Rational PairFunctions::tau(const Rational& v) const { return v == 0 ? Rational(0) : at(v).tau; }

namespace {

// First step whose cumulative value reaches h (h > 0).
const CurveStep& step_reaching(const std::vector<CurveStep>& steps, const Rational& h) {
  const auto it = std::lower_bound(steps.begin(), steps.end(), h,
                                   [](const CurveStep& s, const Rational& x) { return s.at < x; });
  return *it;  // callers guarantee 0 < h <= m
}

}  // namespace

DiscreteReciprocator::DiscreteReciprocator(ZeroMeanDiscreteDist dist)
    : dist_(std::move(dist)), curve_(dist_) {
  std::vector<PairPoint> points;
  const auto breaks = level_breakpoints();
  Rational previous = 0;
  for (const auto& b : breaks) {
    PairPoint p;
    p.d = x_plus(b);
    p.c = x_minus(b);
    p.v = p.d - p.c;
    p.tau = -p.c * p.d;
    p.level_lo = previous;
    p.level_hi = b;
    previous = b;
    points.push_back(std::move(p));
  }
  pairs_ = PairFunctions(std::move(points));

  const auto& atoms = dist_.atoms();
  branches_.resize(atoms.size());
  partner_doubles_.resize(atoms.size());
  atom_doubles_.reserve(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const Rational& x = atoms[i].value;
    atom_doubles_.push_back(to_double(x));
    auto& out = branches_[i];
    if (x == 0) {
      out.push_back(Branch{0, 1, 0});
    } else {
      const bool positive = x > 0;
      const Rational lo = positive ? curve_.eval_left(x) : curve_.eval_right(x);
      const Rational hi = curve_.eval(x);
      const Rational span = hi - lo;
      // Jumps of the opposite side's inverse inside (lo, hi) split the u-range.
      const auto& opposite = positive ? curve_.negative_steps() : curve_.positive_steps();
      std::vector<Rational> cuts;
      for (const auto& s : opposite)
        if (s.at > lo && s.at < hi) cuts.push_back(s.at);
      cuts.push_back(hi);
      Rational a = lo;
      for (const auto& b : cuts) {
        const Rational partner = positive ? x_minus(b) : x_plus(b);
        out.push_back(Branch{Rational((a - lo) / span), Rational((b - lo) / span), partner});
        a = b;
      }
    }
    for (const auto& br : out) partner_doubles_[i].push_back(to_double(br.partner));
  }
}

std::vector<Rational> DiscreteReciprocator::level_breakpoints() const {
  std::vector<Rational> out;
  for (const auto& s : curve_.positive_steps()) out.push_back(s.at);
  for (const auto& s : curve_.negative_steps()) out.push_back(s.at);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void DiscreteReciprocator::check_level(const Rational& h) const {
  if (h < 0 || h > mass())
    throw ValidationError("level " + to_string(h) + " outside [0, " + to_string(mass()) + "]");
}

Rational DiscreteReciprocator::x_plus(const Rational& h) const {
  check_level(h);
  if (h == 0) return 0;
  return step_reaching(curve_.positive_steps(), h).x;
}

Rational DiscreteReciprocator::x_minus(const Rational& h) const {
  check_level(h);
  if (h == 0) return 0;
  return Rational(-step_reaching(curve_.negative_steps(), h).x);
}

Rational DiscreteReciprocator::level(const Rational& x, const Rational& u) const {
  if (u < 0 || u > 1) throw ValidationError("u must lie in [0,1], got " + to_string(u));
  if (x == 0) return 0;
  const Rational g = curve_.eval(x);
  const Rational inner = x > 0 ? curve_.eval_left(x) : curve_.eval_right(x);
  return Rational(inner + u * (g - inner));
}

Rational DiscreteReciprocator::u_plus(const Rational& h) const {
  check_level(h);
  if (h == 0) throw ValidationError("u_+ is defined for h in (0, m]");
  const CurveStep& s = step_reaching(curve_.positive_steps(), h);
  // x_+(h) is always an atom here, so the jump is nonzero.
  return Rational((h - s.before) / (s.at - s.before));
}

Rational DiscreteReciprocator::u_minus(const Rational& h) const {
  check_level(h);
  if (h == 0) throw ValidationError("u_- is defined for h in (0, m]");
  const CurveStep& s = step_reaching(curve_.negative_steps(), h);
  return Rational((h - s.before) / (s.at - s.before));
}

Rational DiscreteReciprocator::reciprocal(const Rational& x, const Rational& u) const {
  const Rational h = level(x, u);
  if (x == 0) return 0;
  return x > 0 ? x_minus(h) : x_plus(h);
}

Rational DiscreteReciprocator::width(const Rational& h) const { return Rational(x_plus(h) - x_minus(h)); }

Rational DiscreteReciprocator::max_level_for_width(const Rational& v) const {
  for (const auto& p : pairs_.points())
    if (p.v == v) return p.level_hi;
  throw ValidationError("width " + to_string(v) + " is not in the range of w");
}

SupportClassification DiscreteReciprocator::classify(const Rational& x) const {
  SupportClassification out;
  out.point = x;
  if (x == 0) return out;
  out.side = x > 0 ? Side::positive : Side::negative;
  const bool atom = dist_.find(x).has_value();
  // With finitely many atoms, (y, x] carries mass for every y < x exactly when
  // x is an atom, and an empty open gap always adjoins x on the zero side.
  out.in_M = atom;
  out.in_N = !atom;
  out.in_L = true;
  return out;
}

bool DiscreteReciprocator::in_good_set(const Rational& x, const Rational& u) const {
  if (x == 0 || u < 0 || u > 1) return false;
  const auto cls = classify(x);
  if (!cls.in_M) return false;
  if (cls.in_N && u != 1) return false;
  if (cls.in_L && u == 0) return false;
  const auto& atoms = dist_.atoms();
  const bool outermost = x > 0 ? atoms.back().value == x : atoms.front().value == x;
  if (outermost && (cls.in_N || u == 1)) return false;
  return true;
}

const std::vector<Branch>& DiscreteReciprocator::branches(const Rational& x) const {
  const auto index = dist_.find(x);
  if (!index) throw ValidationError(to_string(x) + " is not an atom");
  return branches_[*index];
}

std::optional<std::size_t> DiscreteReciprocator::atom_index_for(double x) const {
  const auto it = std::lower_bound(atom_doubles_.begin(), atom_doubles_.end(), x);
  if (it == atom_doubles_.end() || *it != x) return std::nullopt;
  return static_cast<std::size_t>(it - atom_doubles_.begin());
}

double DiscreteReciprocator::reciprocal_at(double x, double u) const {
  const auto index = atom_index_for(x);
  if (!index) throw ValidationError("observation " + std::to_string(x) + " is outside the support");
  const Rational& atom = dist_.atoms()[*index].value;
  if (!(u > 0.0) || u > 1.0) return to_double(reciprocal(atom, rational_from_double(u)));
  const auto& brs = branches_[*index];
  const Rational exact_u = rational_from_double(u);
  for (std::size_t k = 0; k < brs.size(); ++k)
    if (exact_u <= brs[k].u_hi) return partner_doubles_[*index][k];
  return partner_doubles_[*index].back();
}

ContinuousReciprocator::ContinuousReciprocator(ContinuousCurve curve, ReciprocatorTolerances tol)
    : curve_(std::move(curve)), tol_(tol) {
  if (!(tol_.level > 0.0) || !(tol_.position > 0.0))
    throw ValidationError("reciprocator tolerances must be positive");
}

void ContinuousReciprocator::check_level(double h) const {
  if (!(h >= -tol_.level) || h > mass() + tol_.level)
    throw ValidationError("level " + std::to_string(h) + " outside [0, m]");
}

double ContinuousReciprocator::search(double h, bool positive) const {
  check_level(h);
  if (h <= 0.0) return 0.0;
  const double bound = positive ? curve_.upper() : -curve_.lower();
  if (h >= mass() - tol_.level) return positive ? bound : -bound;
  auto g = [&](double d) { return curve_.eval(positive ? d : -d); };
  double lo = 0.0;
  double hi = std::isfinite(bound) ? bound : 1.0;
  if (!std::isfinite(bound)) {
    while (g(hi) < h) {
      lo = hi;
      hi *= 2.0;
      if (hi > 1e300) return positive ? bound : -bound;
    }
  }
  // Invariant: G(lo) < h <= G(hi) (or hi is the support end).
  while (hi - lo > tol_.position * std::max(1.0, hi)) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) >= h)
      hi = mid;
    else
      lo = mid;
  }
  return positive ? hi : -hi;
}

double ContinuousReciprocator::x_plus(double h) const { return search(h, true); }
double ContinuousReciprocator::x_minus(double h) const { return search(h, false); }

double ContinuousReciprocator::u_plus(double h) const {
  check_level(h);
  if (h <= 0.0) throw ValidationError("u_+ is defined for h in (0, m]");
  return 1.0;
}

double ContinuousReciprocator::reciprocal(double x, double u) const {
  if (u < 0.0 || u > 1.0) throw ValidationError("u must lie in [0,1]");
  if (x == 0.0) return 0.0;
  if (!in_support(x)) throw ValidationError("observation " + std::to_string(x) + " is outside the support");
  const double h = std::min(curve_.eval(x), mass());
  return x > 0.0 ? x_minus(h) : x_plus(h);
}

double ContinuousReciprocator::max_level_for_width(double v) const {
  if (!(v > 0.0)) throw ValidationError("width must be positive");
  const double m = mass();
  if (width(m) <= v) return m;
  double lo = 0.0;  // w(lo) <= v
  double hi = m;    // w(hi) > v
  while (hi - lo > tol_.level) {
    const double mid = 0.5 * (lo + hi);
    if (width(mid) <= v)
      lo = mid;
    else
      hi = mid;
  }
  if (lo <= 0.0) throw ValidationError("width " + std::to_string(v) + " is below the range of w");
  return lo;
}

PairValue ContinuousReciprocator::pair_at(double v) const {
  if (v == 0.0) return {};
  const double h = max_level_for_width(v);
  PairValue out;
  out.v = v;
  out.c = x_minus(h);
  out.d = x_plus(h);
  out.tau = -out.c * out.d;
  return out;
}

bool ContinuousReciprocator::in_support(double x) const {
  return x >= curve_.lower() && x <= curve_.upper();
}

}  // namespace recipro
