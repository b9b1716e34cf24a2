#pragma once

// Test-only helpers: random laws and brute-force evaluations written straight
// from the definitions, independent of the library's algorithms.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "recipro/dist.hpp"
#include "recipro/rational.hpp"

namespace recipro::oracle {

/// Random finite law with 2..max_atoms atoms, rational values with small
/// denominators, random integer weights, centred exactly.
inline ZeroMeanDiscreteDist random_law(std::mt19937_64& rng, int max_atoms = 8) {
  std::uniform_int_distribution<int> count(2, max_atoms);
  std::uniform_int_distribution<int> num(-12, 12);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<int> wt(1, 9);
  const int k = count(rng);
  std::set<Rational> values;
  while (static_cast<int>(values.size()) < k) {
    Rational v(num(rng), den(rng));
    v.canonicalize();
    values.insert(v);
  }
  std::vector<int> w;
  int total = 0;
  for (int i = 0; i < k; ++i) {
    w.push_back(wt(rng));
    total += w.back();
  }
  std::vector<Atom> atoms;
  int i = 0;
  for (const auto& v : values) {
    Rational p(w[i++], total);
    p.canonicalize();
    atoms.push_back(Atom{v, p});
  }
  return center(atoms);
}

/// G(x) by direct summation.
inline Rational naive_G(const ZeroMeanDiscreteDist& d, const Rational& x) {
  Rational g = 0;
  for (const auto& a : d.atoms()) {
    if (x >= 0 && a.value > 0 && a.value <= x) g += a.value * a.weight;
    if (x <= 0 && a.value < 0 && a.value >= x) g -= a.value * a.weight;
  }
  return g;
}

/// G(x-) for x > 0, G(x+) for x < 0 (limit from the zero side).
inline Rational naive_G_inner(const ZeroMeanDiscreteDist& d, const Rational& x) {
  Rational g = 0;
  for (const auto& a : d.atoms()) {
    if (x > 0 && a.value > 0 && a.value < x) g += a.value * a.weight;
    if (x < 0 && a.value < 0 && a.value > x) g -= a.value * a.weight;
  }
  return g;
}

inline Rational naive_H(const ZeroMeanDiscreteDist& d, const Rational& x, const Rational& u) {
  if (x == 0) return 0;
  const Rational lo = naive_G_inner(d, x);
  return lo + u * (naive_G(d, x) - lo);
}

/// inf{x >= 0 : G(x) >= h}, scanning 0 and the positive atoms.
inline Rational naive_x_plus(const ZeroMeanDiscreteDist& d, const Rational& h) {
  if (h <= 0) return 0;
  for (const auto& a : d.atoms())
    if (a.value > 0 && naive_G(d, a.value) >= h) return a.value;
  return d.atoms().back().value;
}

/// sup{x <= 0 : G(x) >= h}.
inline Rational naive_x_minus(const ZeroMeanDiscreteDist& d, const Rational& h) {
  if (h <= 0) return 0;
  const auto& atoms = d.atoms();
  for (auto it = atoms.rbegin(); it != atoms.rend(); ++it)
    if (it->value < 0 && naive_G(d, it->value) >= h) return it->value;
  return atoms.front().value;
}

inline Rational naive_r(const ZeroMeanDiscreteDist& d, const Rational& x, const Rational& u) {
  if (x == 0) return 0;
  const Rational h = naive_H(d, x, u);
  return x > 0 ? naive_x_minus(d, h) : naive_x_plus(d, h);
}

/// Binomial coefficient as an exact integer.
inline mpz_class choose(unsigned n, unsigned k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

}  // namespace recipro::oracle
